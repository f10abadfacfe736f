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

#include "xchannel/base64.hpp"
#include "xchannel/channel.hpp"
#include "xchannel/channel_info.hpp"
#include "xchannel/endpoint.hpp"
#include "xchannel/handler.hpp"
#include "xchannel/http.hpp"
#include "xchannel/message.hpp"
#include "xchannel/registry.hpp"
#include "xchannel/result.hpp"
#include "xchannel/soap_channel.hpp"
#include "xchannel/soap_envelope.hpp"
#include "xchannel/status.hpp"
#include "xchannel/tcp_channel.hpp"
#include "xchannel/udp_channel.hpp"
#include "xchannel/udp_demux.hpp"
