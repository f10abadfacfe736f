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
#include <string>

namespace xchannel {

/// Integer result contract shared by the handler and every channel.
///
/// Zero is success, the single positive value means "nothing to deliver",
/// and every negative value is an error.
enum class Status : int {
    ok = 0,
    no_messages = 1,
    socket_error = -1,
    not_found = -2,
    bad_info = -3,
    closed = -4,
    protocol_error = -5,
};

inline constexpr std::array<Status, 7> kAllStatusCodes = {
    Status::ok,        Status::no_messages, Status::socket_error,   Status::not_found,
    Status::bad_info,  Status::closed,      Status::protocol_error,
};

constexpr int to_int(Status s) noexcept { return static_cast<int>(s); }
constexpr bool is_error(Status s) noexcept { return to_int(s) < 0; }

/// Canonical token for a status value, e.g. "CHANNEL_OK".
/// Unknown values format as "CHANNEL_ERR(<n>)".
std::string status_name(int code);
inline std::string status_name(Status s) { return status_name(to_int(s)); }

}  // namespace xchannel
