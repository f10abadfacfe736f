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

#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xchannel/message.hpp"
#include "xchannel/status.hpp"

namespace xchannel::http {

struct HttpMessage {
    enum class Kind { request, response };

    Kind kind = Kind::request;
    std::string method;   // request only
    std::string target;   // request only
    int status_code = 0;  // response only
    std::string reason;   // response only
    std::string version;  // "HTTP/1.1"
    std::vector<std::pair<std::string, std::string>> headers;
    Bytes body;

    /// Case-insensitive lookup; first match wins.
    const std::string* header(std::string_view name) const;

    friend bool operator==(const HttpMessage&, const HttpMessage&) = default;
};

inline constexpr std::string_view kSoapContentType = "text/xml; charset=utf-8";

/// "POST <path> HTTP/1.1" with Host, Content-Type, SOAPAction and
/// Content-Length headers, CRLF line endings, then the body.
std::string frame_request(std::span<const std::uint8_t> body, std::string_view host,
                          std::string_view path = "/");

std::string frame_response(int status_code, std::string_view reason,
                           std::span<const std::uint8_t> body,
                           std::string_view content_type = kSoapContentType);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// Incremental HTTP/1.1 parser for requests and responses. Bytes may be fed
/// in arbitrary pieces; completed messages queue up in arrival order, so
/// several messages back to back on one connection are fine.
///
/// Bodies are delimited by Content-Length only. Transfer-Encoding is not
/// supported. Any error is sticky.
class HttpParser {
public:
    static constexpr std::size_t kMaxHeaderBytes = 64 * 1024;
    static constexpr std::size_t kMaxBodyBytes = 256u << 20;

    Status feed(std::span<const std::uint8_t> bytes);
    Status feed(std::string_view bytes) { return feed(as_bytes(bytes)); }

    std::optional<HttpMessage> next();

    Status status() const noexcept { return status_; }

    /// Response code a server should send after an error: 501 for an
    /// unsupported transfer coding, 400 otherwise.
    int error_response_code() const noexcept { return error_code_; }

private:
    Status fail(int response_code);
    bool parse_head(std::string_view head);

    std::string buffer_;
    std::size_t scan_from_ = 0;
    std::optional<HttpMessage> pending_;  // head parsed, body incomplete
    std::size_t body_length_ = 0;
    std::deque<HttpMessage> ready_;
    Status status_ = Status::ok;
    int error_code_ = 0;
};

}  // namespace xchannel::http
