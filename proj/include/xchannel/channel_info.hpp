// Copyright 2026 The xchannel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "xchannel/endpoint.hpp"
#include "xchannel/result.hpp"

namespace xchannel {

// Built-in channel type tokens. The registry accepts further names.
namespace channel_type {
inline constexpr std::string_view tcp_server = "tcp-server";
inline constexpr std::string_view tcp_client = "tcp-client";
inline constexpr std::string_view udp_server = "udp-server";
inline constexpr std::string_view udp_client = "udp-client";
inline constexpr std::string_view soap_server = "soap-server";
inline constexpr std::string_view soap_client = "soap-client";

inline constexpr std::array<std::string_view, 6> builtin = {
    tcp_server, tcp_client, udp_server, udp_client, soap_server, soap_client,
};

bool is_server(std::string_view type) noexcept;
}  // namespace channel_type

// Option keys understood by the built-in channels.
namespace option {
inline constexpr std::string_view queue_capacity = "queue_capacity";
inline constexpr std::string_view read_buffer = "read_buffer";
inline constexpr std::string_view nodelay = "nodelay";
inline constexpr std::string_view idle_timeout = "idle_timeout";
inline constexpr std::string_view recv_buffer = "recv_buffer";
inline constexpr std::string_view soap_urn = "soap_urn";
inline constexpr std::string_view http_path = "http_path";
inline constexpr std::string_view reply_wait_ms = "reply_wait_ms";
}  // namespace option

inline constexpr std::size_t kDefaultQueueCapacity = 1024;
inline constexpr std::size_t kDefaultReadBuffer = 64 * 1024;

/// Channel-creation descriptor. For server types `endpoint` is the bind
/// address, for client types the address to connect to.
struct ChannelInfo {
    std::string type;
    Endpoint endpoint;
    std::map<std::string, std::string, std::less<>> options;
};

/// Typed option lookups. A missing key yields `fallback`; a present key with
/// an unparsable or out-of-range value yields Status::bad_info.
Result<std::uint64_t> option_uint(const ChannelInfo& info, std::string_view key,
                                  std::uint64_t fallback, std::uint64_t min = 0,
                                  std::uint64_t max = UINT64_MAX);
Result<bool> option_bool(const ChannelInfo& info, std::string_view key, bool fallback);
Result<std::chrono::milliseconds> option_seconds(const ChannelInfo& info, std::string_view key,
                                                 std::chrono::milliseconds fallback);
std::string option_text(const ChannelInfo& info, std::string_view key, std::string_view fallback);

}  // namespace xchannel
