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

namespace xchannel {

/// Standard alphabet (A-Z a-z 0-9 + /) with '=' padding.
std::string base64_encode(std::span<const std::uint8_t> bytes);

/// Inverse of base64_encode. Whitespace between characters is skipped.
/// Illegal characters, misplaced or excess padding, and lengths that are
/// not a multiple of four yield Status::protocol_error.
Result<Bytes> base64_decode(std::string_view text);

}  // namespace xchannel
