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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xchannel/endpoint.hpp"
#include "xchannel/status.hpp"

namespace xchannel {

using Bytes = std::vector<std::uint8_t>;

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
inline std::string to_string(const Bytes& b) { return std::string(b.begin(), b.end()); }

/// Names one live channel within a handler. Zero means "no channel".
struct ChannelId {
    std::uint32_t value = 0;

    constexpr ChannelId() = default;
    constexpr explicit ChannelId(std::uint32_t v) : value(v) {}

    constexpr bool valid() const noexcept { return value != 0; }
    friend constexpr auto operator<=>(ChannelId, ChannelId) = default;
};

inline constexpr ChannelId kNoChannel{};

enum class MessageKind { data, connected, disconnected, error };

std::string_view kind_name(MessageKind kind) noexcept;

/// The unit routed through the platform.
///
/// CONNECTED and DISCONNECTED carry no payload; ERROR carries its code in
/// `status`. DATA payloads are opaque and never rewritten.
struct Message {
    ChannelId channel_id;
    MessageKind kind = MessageKind::data;
    Bytes payload;
    std::optional<Endpoint> remote;
    std::optional<Status> status;

    static Message data(ChannelId id, Bytes payload) {
        return Message{id, MessageKind::data, std::move(payload), std::nullopt, std::nullopt};
    }
    static Message connected(ChannelId id, std::optional<Endpoint> remote = std::nullopt) {
        return Message{id, MessageKind::connected, {}, std::move(remote), std::nullopt};
    }
    static Message disconnected(ChannelId id) {
        return Message{id, MessageKind::disconnected, {}, std::nullopt, std::nullopt};
    }
    static Message error(ChannelId id, Status code) {
        return Message{id, MessageKind::error, {}, std::nullopt, code};
    }
};

}  // namespace xchannel

template <>
struct std::hash<xchannel::ChannelId> {
    std::size_t operator()(xchannel::ChannelId id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
