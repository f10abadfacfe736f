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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "xchannel/channel_info.hpp"
#include "xchannel/result.hpp"

namespace channelctl {

enum class Command { send, serve, echo };

struct CliConfig {
    Command command = Command::send;
    std::string type;  // full token or one of the aliases tcp/udp/soap
    std::string address;
    std::filesystem::path file;
    std::filesystem::path out_dir = ".";
    std::size_t chunk_size = 16384;
    std::vector<std::string> options;  // key=value
};

enum ExitCode : int { kSuccess = 0, kSetupFailure = 1, kTransferFailure = 2 };

/// Resolves the type alias for the command and checks its flavour: send
/// needs a client type, serve and echo a server type. Builds the
/// ChannelInfo; Status::bad_info on any mismatch or malformed field.
xchannel::Result<xchannel::ChannelInfo> channel_info_for(const CliConfig& config);

/// Set from the SIGINT/SIGTERM handler; serve and echo poll it.
void request_stop() noexcept;
bool stop_requested() noexcept;
void install_signal_handlers();

int run_send(const CliConfig& config, std::ostream& out);
int run_serve(const CliConfig& config, std::ostream& out);
int run_echo(const CliConfig& config, std::ostream& out);

}  // namespace channelctl
