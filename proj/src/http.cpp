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
#include "xchannel/http.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace xchannel::http {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

bool is_token_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) ||
           std::string_view("!#$%&'*+-.^_`|~").find(c) != std::string_view::npos;
}

std::string_view trim_ows(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool valid_version(std::string_view v) { return v == "HTTP/1.1" || v == "HTTP/1.0"; }

}  // namespace

const std::string* HttpMessage::header(std::string_view name) const {
    for (const auto& [key, value] : headers) {
        if (iequals(key, name)) return &value;
    }
    return nullptr;
}

std::string frame_request(std::span<const std::uint8_t> body, std::string_view host,
                          std::string_view path) {
    std::string out;
    out.reserve(body.size() + 160);
    out += "POST ";
    out += path.empty() ? std::string_view("/") : path;
    out += " HTTP/1.1\r\nHost: ";
    out += host;
    out += "\r\nContent-Type: ";
    out += kSoapContentType;
    out += "\r\nSOAPAction: \"\"\r\nContent-Length: ";
    out += std::to_string(body.size());
    out += "\r\n\r\n";
    out.append(reinterpret_cast<const char*>(body.data()), body.size());
    return out;
}

std::string frame_response(int status_code, std::string_view reason,
                           std::span<const std::uint8_t> body, std::string_view content_type) {
    std::string out;
    out.reserve(body.size() + 128);
    out += "HTTP/1.1 ";
    out += std::to_string(status_code);
    out += ' ';
    out += reason;
    out += "\r\nContent-Type: ";
    out += content_type;
    out += "\r\nContent-Length: ";
    out += std::to_string(body.size());
    out += "\r\n\r\n";
    out.append(reinterpret_cast<const char*>(body.data()), body.size());
    return out;
}

Status HttpParser::fail(int response_code) {
    status_ = Status::protocol_error;
    error_code_ = response_code;
    buffer_.clear();
    pending_.reset();
    return status_;
}

bool HttpParser::parse_head(std::string_view head) {
    HttpMessage msg;
    auto line_end = head.find("\r\n");
    std::string_view start = head.substr(0, line_end);
    std::string_view rest = line_end == std::string_view::npos ? std::string_view{}
                                                               : head.substr(line_end + 2);

    auto sp1 = start.find(' ');
    if (sp1 == std::string_view::npos) return false;
    if (start.substr(0, 5) == "HTTP/") {
        msg.kind = HttpMessage::Kind::response;
        msg.version = std::string(start.substr(0, sp1));
        auto code = start.substr(sp1 + 1, 3);
        auto after = start.substr(std::min(start.size(), sp1 + 4));
        if (!after.empty() && after.front() != ' ') return false;
        int value = 0;
        auto [p, ec] = std::from_chars(code.data(), code.data() + code.size(), value);
        if (code.size() != 3 || ec != std::errc{} || p != code.data() + 3 || value < 100) return false;
        msg.status_code = value;
        msg.reason = std::string(trim_ows(after));
    } else {
        msg.kind = HttpMessage::Kind::request;
        auto sp2 = start.find(' ', sp1 + 1);
        if (sp2 == std::string_view::npos) return false;
        msg.method = std::string(start.substr(0, sp1));
        msg.target = std::string(start.substr(sp1 + 1, sp2 - sp1 - 1));
        msg.version = std::string(start.substr(sp2 + 1));
        if (msg.method.empty() || !std::all_of(msg.method.begin(), msg.method.end(), is_token_char)) {
            return false;
        }
        if (msg.target.empty() || msg.target.find(' ') != std::string::npos) return false;
    }
    if (!valid_version(msg.version)) return false;

    while (!rest.empty()) {
        auto end = rest.find("\r\n");
        std::string_view line = rest.substr(0, end);
        rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end + 2);
        auto colon = line.find(':');
        if (colon == 0 || colon == std::string_view::npos) return false;
        auto name = line.substr(0, colon);
        if (!std::all_of(name.begin(), name.end(), is_token_char)) return false;
        msg.headers.emplace_back(std::string(name), std::string(trim_ows(line.substr(colon + 1))));
    }

    std::optional<std::size_t> length;
    for (const auto& [key, value] : msg.headers) {
        if (iequals(key, "Transfer-Encoding")) {
            error_code_ = 501;
            return false;
        }
        if (!iequals(key, "Content-Length")) continue;
        std::size_t n = 0;
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
        if (value.empty() || ec != std::errc{} || p != value.data() + value.size()) return false;
        if (length && *length != n) return false;
        length = n;
    }
    if (!length) {
        const bool bodiless =
            msg.kind == HttpMessage::Kind::request
                ? !(msg.method == "POST" || msg.method == "PUT" || msg.method == "PATCH")
                : (msg.status_code < 200 || msg.status_code == 204 || msg.status_code == 304);
        if (!bodiless) return false;
        length = 0;
    }
    if (*length > kMaxBodyBytes) return false;

    body_length_ = *length;
    pending_ = std::move(msg);
    return true;
}

Status HttpParser::feed(std::span<const std::uint8_t> bytes) {
    if (status_ != Status::ok) return status_;
    buffer_.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());

    std::size_t consumed = 0;
    for (;;) {
        if (!pending_) {
            std::string_view view(buffer_);
            view.remove_prefix(consumed);
            auto end = view.find("\r\n\r\n", scan_from_ > consumed ? scan_from_ - consumed : 0);
            if (end == std::string_view::npos) {
                if (view.size() > kMaxHeaderBytes) return fail(400);
                // a terminator may straddle the next feed
                scan_from_ = consumed + (view.size() >= 3 ? view.size() - 3 : 0);
                break;
            }
            if (end > kMaxHeaderBytes) return fail(400);
            error_code_ = 0;
            if (!parse_head(view.substr(0, end))) return fail(error_code_ == 501 ? 501 : 400);
            consumed += end + 4;
            scan_from_ = consumed;
        }
        if (buffer_.size() - consumed < body_length_) break;
        pending_->body.assign(buffer_.begin() + static_cast<std::ptrdiff_t>(consumed),
                              buffer_.begin() + static_cast<std::ptrdiff_t>(consumed + body_length_));
        consumed += body_length_;
        scan_from_ = consumed;
        ready_.push_back(std::move(*pending_));
        pending_.reset();
    }
    buffer_.erase(0, consumed);
    scan_from_ -= std::min(scan_from_, consumed);
    return Status::ok;
}

std::optional<HttpMessage> HttpParser::next() {
    if (ready_.empty()) return std::nullopt;
    HttpMessage msg = std::move(ready_.front());
    ready_.pop_front();
    return msg;
}

}  // namespace xchannel::http
