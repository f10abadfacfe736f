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

// channelctl: stream files through any channel type, receive them to disk,
// or run an echo server.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "commands.hpp"

namespace {

void configure_logging(const std::string& flag_level) {
    auto logger = spdlog::stderr_color_mt("channelctl");
    spdlog::set_default_logger(logger);
    std::string level = flag_level;
    if (const char* env = std::getenv("CHANNELCTL_LOG"); env && *env) level = env;
    spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stream data over TCP, UDP or SOAP channels"};
    app.require_subcommand(1);

    channelctl::CliConfig config;
    std::string log_level = "warn";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--type", config.type,
                        "Channel type: tcp, udp, soap or a full token such as tcp-client")
            ->required();
        sub->add_option("--addr", config.address, "host:port to connect to or bind")->required();
        sub->add_option("--opt", config.options, "Channel option key=value (repeatable)");
        sub->add_option("--log", log_level, "Log level (trace..off); CHANNELCTL_LOG overrides")
            ->capture_default_str();
    };

    auto* send = app.add_subcommand("send", "Send a file over a client channel");
    add_common(send);
    send->add_option("--file", config.file, "File to send")->required();
    send->add_option("--chunk", config.chunk_size, "Bytes per message")->capture_default_str();

    auto* serve = app.add_subcommand("serve", "Receive into <out>/<child-id>.bin until interrupted");
    add_common(serve);
    serve->add_option("--out", config.out_dir, "Output directory")->capture_default_str();

    auto* echo = app.add_subcommand("echo", "Echo every payload back to its sender");
    add_common(echo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : channelctl::kSetupFailure;
    }

    configure_logging(log_level);
    if (*send) {
        config.command = channelctl::Command::send;
        return channelctl::run_send(config, std::cout);
    }
    channelctl::install_signal_handlers();
    if (*serve) {
        config.command = channelctl::Command::serve;
        return channelctl::run_serve(config, std::cout);
    }
    config.command = channelctl::Command::echo;
    return channelctl::run_echo(config, std::cout);
}
