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

#include <memory>

#include "xchannel/channel.hpp"
#include "xchannel/channel_info.hpp"
#include "xchannel/result.hpp"

namespace xchannel {

// Binary payloads carried as base64 inside a SOAP rawDataMessage
// envelope over HTTP/1.1 POST. Each request's response carries the next
// reply the application queued on the server-side child.

Result<std::shared_ptr<ChannelComponent>> make_soap_server(const ChannelInfo& info, ChannelId id,
                                                          ChannelHost& host);
Result<std::shared_ptr<ChannelComponent>> make_soap_client(const ChannelInfo& info, ChannelId id,
                                                          ChannelHost& host);

}  // namespace xchannel
