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
#include "xchannel/channel_info.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace xchannel {

bool channel_type::is_server(std::string_view type) noexcept {
    return type.size() > 7 && type.substr(type.size() - 7) == "-server";
}

namespace {

const std::string* find_option(const ChannelInfo& info, std::string_view key) {
    auto it = info.options.find(key);
    return it == info.options.end() ? nullptr : &it->second;
}

}  // namespace

Result<std::uint64_t> option_uint(const ChannelInfo& info, std::string_view key,
                                  std::uint64_t fallback, std::uint64_t min, std::uint64_t max) {
    const auto* text = find_option(info, key);
    if (text == nullptr) return fallback;
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text->data(), text->data() + text->size(), value);
    if (text->empty() || ec != std::errc{} || end != text->data() + text->size()) {
        return Status::bad_info;
    }
    if (value < min || value > max) return Status::bad_info;
    return value;
}

Result<bool> option_bool(const ChannelInfo& info, std::string_view key, bool fallback) {
    const auto* text = find_option(info, key);
    if (text == nullptr) return fallback;
    std::string lower(*text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "1" || lower == "true" || lower == "yes" || lower == "on") return true;
    if (lower == "0" || lower == "false" || lower == "no" || lower == "off") return false;
    return Status::bad_info;
}

Result<std::chrono::milliseconds> option_seconds(const ChannelInfo& info, std::string_view key,
                                                 std::chrono::milliseconds fallback) {
    const auto* text = find_option(info, key);
    if (text == nullptr) return fallback;
    double seconds = 0;
    auto [end, ec] = std::from_chars(text->data(), text->data() + text->size(), seconds);
    if (text->empty() || ec != std::errc{} || end != text->data() + text->size()) {
        return Status::bad_info;
    }
    if (!std::isfinite(seconds) || seconds < 0 || seconds > 1e6) return Status::bad_info;
    return std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(seconds * 1000.0)));
}

std::string option_text(const ChannelInfo& info, std::string_view key, std::string_view fallback) {
    const auto* text = find_option(info, key);
    return text == nullptr ? std::string(fallback) : *text;
}

}  // namespace xchannel
