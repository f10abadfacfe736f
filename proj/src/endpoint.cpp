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
#include "xchannel/endpoint.hpp"

#include <charconv>

namespace xchannel {

namespace {

Result<std::uint16_t> parse_port(std::string_view text) {
    if (text.empty() || text.size() > 5) return Status::bad_info;
    unsigned value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) return Status::bad_info;
    if (value < 1 || value > 65535) return Status::bad_info;
    return static_cast<std::uint16_t>(value);
}

}  // namespace

bool is_valid(const Endpoint& endpoint) noexcept {
    return !endpoint.host.empty() && endpoint.port != 0;
}

Result<Endpoint> parse_endpoint(std::string_view text) {
    std::string_view host;
    std::string_view port;
    if (!text.empty() && text.front() == '[') {
        auto close = text.find(']');
        if (close == std::string_view::npos || close + 1 >= text.size() || text[close + 1] != ':') {
            return Status::bad_info;
        }
        host = text.substr(1, close - 1);
        port = text.substr(close + 2);
        if (host.find(':') == std::string_view::npos) return Status::bad_info;
    } else {
        auto colon = text.rfind(':');
        if (colon == std::string_view::npos) return Status::bad_info;
        host = text.substr(0, colon);
        port = text.substr(colon + 1);
        // an unbracketed IPv6 literal is ambiguous
        if (host.find(':') != std::string_view::npos) return Status::bad_info;
    }
    if (host.empty()) return Status::bad_info;
    auto parsed_port = parse_port(port);
    if (!parsed_port) return parsed_port.status();
    return Endpoint{std::string(host), *parsed_port};
}

std::string format_endpoint(const Endpoint& endpoint) {
    if (endpoint.host.find(':') != std::string::npos) {
        return "[" + endpoint.host + "]:" + std::to_string(endpoint.port);
    }
    return endpoint.host + ":" + std::to_string(endpoint.port);
}

}  // namespace xchannel
