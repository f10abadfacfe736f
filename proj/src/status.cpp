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
#include "xchannel/status.hpp"

namespace xchannel {

std::string status_name(int code) {
    switch (code) {
        case to_int(Status::ok): return "CHANNEL_OK";
        case to_int(Status::no_messages): return "CHANNEL_NOMESSAGES";
        case to_int(Status::socket_error): return "CHANNEL_SOCKETERR";
        case to_int(Status::not_found): return "CHANNEL_NOTFOUND";
        case to_int(Status::bad_info): return "CHANNEL_BADINFO";
        case to_int(Status::closed): return "CHANNEL_CLOSED";
        case to_int(Status::protocol_error): return "CHANNEL_PROTOERR";
        default: return "CHANNEL_ERR(" + std::to_string(code) + ")";
    }
}

}  // namespace xchannel
