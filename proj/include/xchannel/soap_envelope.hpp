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

#include <span>
#include <string>
#include <string_view>

#include "xchannel/message.hpp"
#include "xchannel/result.hpp"

namespace xchannel::soap {

inline constexpr std::string_view kEnvelopeNs = "http://schemas.xmlsoap.org/soap/envelope/";
inline constexpr std::string_view kEncodingNs = "http://schemas.xmlsoap.org/soap/encoding/";
inline constexpr std::string_view kXsiNs = "http://www.w3.org/1999/XMLSchema-instance";
inline constexpr std::string_view kXsdNs = "http://www.w3.org/1999/XMLSchema";
inline constexpr std::string_view kDefaultUrn = "urn:simple-calc";

/// Wraps `payload` as base64 text of a `data` element inside
/// `ns:rawDataMessage` in a SOAP 1.1 envelope. The output is a fixed byte
/// template: identical inputs always give identical bytes.
std::string encode_raw_data_envelope(std::span<const std::uint8_t> payload,
                                     std::string_view urn = kDefaultUrn);

/// Extracts the payload from a rawDataMessage envelope. Elements are matched
/// by local name, so any prefix works and the application URN is not
/// checked. Status::protocol_error on malformed XML, a missing
/// Envelope/Body/rawDataMessage/data chain, or bad base64.
Result<Bytes> decode_raw_data_envelope(std::string_view document);

/// SOAP 1.1 Fault envelope, `code` being e.g. "SOAP-ENV:Client".
std::string encode_fault(std::string_view code, std::string_view message);

/// True if `document` parses and its Body holds a Fault element.
bool is_fault(std::string_view document);

}  // namespace xchannel::soap
