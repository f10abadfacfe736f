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

#include <cstdint>
#include <string>
#include <string_view>

#include "xchannel/result.hpp"

namespace xchannel {

// Host (IPv4/IPv6 literal or DNS name) and port in [1, 65535].
struct Endpoint {
    std::string host;
    std::uint16_t port = 0;

    friend bool operator==(const Endpoint&, const Endpoint&) = default;
    friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

/// Parses "host:port" or "[v6-literal]:port".
Result<Endpoint> parse_endpoint(std::string_view text);

/// Inverse of parse_endpoint; IPv6 literals are bracketed.
std::string format_endpoint(const Endpoint& endpoint);

bool is_valid(const Endpoint& endpoint) noexcept;

}  // namespace xchannel
