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
#include "xchannel/base64.hpp"

#include <array>

namespace xchannel {

namespace {

constexpr std::string_view kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

constexpr std::int8_t kInvalid = -1;
constexpr std::int8_t kPad = -2;
constexpr std::int8_t kSpace = -3;

constexpr std::array<std::int8_t, 256> make_table() {
    std::array<std::int8_t, 256> table{};
    for (auto& v : table) v = kInvalid;
    for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
        table[static_cast<unsigned char>(kAlphabet[i])] = static_cast<std::int8_t>(i);
    }
    table['='] = kPad;
    for (char c : {' ', '\t', '\r', '\n'}) table[static_cast<unsigned char>(c)] = kSpace;
    return table;
}

constexpr auto kTable = make_table();

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out += kAlphabet[(v >> 18) & 0x3f];
        out += kAlphabet[(v >> 12) & 0x3f];
        out += kAlphabet[(v >> 6) & 0x3f];
        out += kAlphabet[v & 0x3f];
    }
    const std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        const std::uint32_t v = bytes[i] << 16;
        out += kAlphabet[(v >> 18) & 0x3f];
        out += kAlphabet[(v >> 12) & 0x3f];
        out += "==";
    } else if (rest == 2) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out += kAlphabet[(v >> 18) & 0x3f];
        out += kAlphabet[(v >> 12) & 0x3f];
        out += kAlphabet[(v >> 6) & 0x3f];
        out += '=';
    }
    return out;
}

Result<Bytes> base64_decode(std::string_view text) {
    Bytes out;
    out.reserve(text.size() / 4 * 3);
    std::uint32_t group = 0;
    int filled = 0;   // sextets in the current quad
    int padding = 0;  // '=' seen in the current quad
    bool finished = false;

    for (char c : text) {
        const std::int8_t v = kTable[static_cast<unsigned char>(c)];
        if (v == kSpace) continue;
        if (v == kInvalid || finished) return Status::protocol_error;
        if (v == kPad) {
            // padding may only fill positions 3 and 4 of a quad
            if (filled + padding < 2) return Status::protocol_error;
            ++padding;
        } else {
            if (padding != 0) return Status::protocol_error;
            group = (group << 6) | static_cast<std::uint32_t>(v);
            ++filled;
        }
        if (filled + padding == 4) {
            group <<= 6 * padding;
            out.push_back(static_cast<std::uint8_t>(group >> 16));
            if (padding < 2) out.push_back(static_cast<std::uint8_t>(group >> 8));
            if (padding < 1) out.push_back(static_cast<std::uint8_t>(group));
            // non-canonical trailing bits are rejected
            if ((padding == 1 && (group & 0xff) != 0) || (padding == 2 && (group & 0xffff) != 0)) {
                return Status::protocol_error;
            }
            finished = padding != 0;
            group = 0;
            filled = 0;
            padding = 0;
        }
    }
    if (filled + padding != 0) return Status::protocol_error;
    return out;
}

}  // namespace xchannel
