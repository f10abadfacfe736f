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
#include "xchannel/message.hpp"

namespace xchannel {

std::string_view kind_name(MessageKind kind) noexcept {
    switch (kind) {
        case MessageKind::data: return "DATA";
        case MessageKind::connected: return "CONNECTED";
        case MessageKind::disconnected: return "DISCONNECTED";
        case MessageKind::error: return "ERROR";
    }
    return "?";
}

}  // namespace xchannel
