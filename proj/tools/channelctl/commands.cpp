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

#include "commands.hpp"

#include <spdlog/spdlog.h>
#include <zlib.h>

#include <algorithm>
#include <chrono>
#include <csignal>
#include <fstream>
#include <memory>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "xchannel/handler.hpp"

namespace channelctl {

using namespace xchannel;
using namespace std::chrono_literals;

namespace {

volatile std::sig_atomic_t g_stop = 0;

extern "C" void on_signal(int) { g_stop = 1; }

std::string resolve_type(const CliConfig& config) {
    const bool client = config.command == Command::send;
    if (config.type == "tcp" || config.type == "udp" || config.type == "soap") {
        return config.type + (client ? "-client" : "-server");
    }
    return config.type;
}

class Crc32 {
public:
    void update(const Bytes& bytes) {
        crc_ = ::crc32(crc_, bytes.data(), static_cast<uInt>(bytes.size()));
    }
    unsigned long value() const { return crc_; }

private:
    unsigned long crc_ = ::crc32(0L, Z_NULL, 0);
};

std::string hex32(unsigned long v) { return fmt::format("{:08x}", v); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Transfer-fatal notifications on the sending channel.
bool is_fatal(const Message& msg, ChannelId id) {
    if (msg.channel_id != id) return false;
    if (msg.kind == MessageKind::disconnected) return true;
    return msg.kind == MessageKind::error && msg.status && is_error(*msg.status);
}

Result<ChannelId> open_channel(ChannelHandler& handler, const CliConfig& config) {
    auto info = channel_info_for(config);
    if (!info) return info.status();
    auto id = handler.create_channel(*info);
    if (!id) return id.status();
    spdlog::info("{} channel {} on {}", info->type, id->value, format_endpoint(info->endpoint));
    return id;
}

}  // namespace

Result<ChannelInfo> channel_info_for(const CliConfig& config) {
    ChannelInfo info;
    info.type = resolve_type(config);
    if (std::ranges::find(channel_type::builtin, info.type) == channel_type::builtin.end()) {
        spdlog::error("unknown channel type '{}'", config.type);
        return Status::bad_info;
    }
    const bool server = channel_type::is_server(info.type);
    if (server != (config.command != Command::send)) {
        spdlog::error("'{}' is a {} type; this command needs a {} type", info.type,
                      server ? "server" : "client", server ? "client" : "server");
        return Status::bad_info;
    }
    auto endpoint = parse_endpoint(config.address);
    if (!endpoint) {
        spdlog::error("bad address '{}'", config.address);
        return Status::bad_info;
    }
    info.endpoint = *endpoint;
    for (const auto& kv : config.options) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            spdlog::error("option '{}' is not key=value", kv);
            return Status::bad_info;
        }
        info.options.insert_or_assign(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return info;
}

void request_stop() noexcept { g_stop = 1; }
bool stop_requested() noexcept { return g_stop != 0; }

void install_signal_handlers() {
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
}

int run_send(const CliConfig& config, std::ostream& out) {
    if (config.chunk_size == 0) {
        spdlog::error("chunk size must be positive");
        return kSetupFailure;
    }
    std::ifstream file(config.file, std::ios::binary);
    if (!file) {
        spdlog::error("cannot read '{}'", config.file.string());
        return kSetupFailure;
    }

    ChannelHandler handler;
    auto opened = open_channel(handler, config);
    if (!opened) {
        out << "error: " << status_name(opened.status()) << '\n';
        return kSetupFailure;
    }
    const ChannelId id = *opened;
    const std::size_t capacity = handler.channel_stats(id)->capacity;

    // Incoming traffic is only inspected for signs that the transfer died.
    auto transfer_failed = [&] {
        while (auto msg = handler.get_message()) {
            if (is_fatal(*msg, id)) {
                spdlog::error("channel {} failed: {} {}", id.value, kind_name(msg->kind),
                              msg->status ? status_name(*msg->status) : "");
                return true;
            }
        }
        return false;
    };
    // Waits while the outgoing queue holds more than `limit` messages.
    auto wait_for_room = [&](std::size_t limit) {
        for (;;) {
            if (transfer_failed()) return false;
            auto stats = handler.channel_stats(id);
            if (!stats) return false;
            if (stats->queued <= limit) return true;
            std::this_thread::sleep_for(200us);
        }
    };

    const auto start = std::chrono::steady_clock::now();
    Crc32 crc;
    std::uint64_t total = 0;
    Bytes chunk(config.chunk_size);
    while (file) {
        file.read(reinterpret_cast<char*>(chunk.data()), static_cast<std::streamsize>(chunk.size()));
        const auto got = static_cast<std::size_t>(file.gcount());
        if (got == 0) break;
        Bytes piece(chunk.begin(), chunk.begin() + got);
        crc.update(piece);
        if (!wait_for_room(capacity - 1)) return kTransferFailure;
        if (handler.send_to_channel(Message::data(id, std::move(piece))) != Status::ok) {
            return kTransferFailure;
        }
        total += got;
    }
    if (!wait_for_room(0)) return kTransferFailure;

    const auto stats = handler.channel_stats(id);
    if (stats && stats->dropped != 0) {
        spdlog::error("{} chunks dropped", stats->dropped);
        return kTransferFailure;
    }
    const double elapsed = seconds_since(start);
    handler.destroy_channel(id);
    out << fmt::format("sent {} bytes in {:.3f} s crc32 {}\n", total, elapsed, hex32(crc.value()));
    return kSuccess;
}

namespace {

/// Poll loop shared by serve and echo: runs until a stop is requested.
template <class OnMessage>
int run_server(const CliConfig& config, std::ostream& out, OnMessage&& on_message) {
    ChannelHandler handler;
    auto opened = open_channel(handler, config);
    if (!opened) {
        out << "error: " << status_name(opened.status()) << '\n';
        return kSetupFailure;
    }
    out << "listening on " << config.address << std::endl;
    while (!stop_requested()) {
        auto msg = handler.wait_message(100ms);
        if (msg) on_message(handler, *msg);
    }
    handler.shutdown();
    while (auto msg = handler.get_message()) on_message(handler, *msg);
    return kSuccess;
}

}  // namespace

int run_serve(const CliConfig& config, std::ostream& out) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) {
        spdlog::error("cannot create '{}': {}", config.out_dir.string(), ec.message());
        return kSetupFailure;
    }

    struct Sink {
        std::ofstream file;
        std::uint64_t bytes = 0;
        Crc32 crc;
    };
    std::unordered_map<ChannelId, std::unique_ptr<Sink>> sinks;
    auto sink_for = [&](ChannelId id) -> Sink& {
        auto& slot = sinks[id];
        if (!slot) {
            slot = std::make_unique<Sink>();
            auto path = config.out_dir / (std::to_string(id.value) + ".bin");
            slot->file.open(path, std::ios::binary | std::ios::trunc);
            spdlog::info("child {} -> {}", id.value, path.string());
        }
        return *slot;
    };
    auto finish = [&](ChannelId id, std::ostream& os) {
        auto it = sinks.find(id);
        if (it == sinks.end()) return;
        os << fmt::format("child {} received {} bytes crc32 {}\n", id.value, it->second->bytes,
                          hex32(it->second->crc.value()));
        os.flush();
        sinks.erase(it);
    };

    const int rc = run_server(config, out, [&](ChannelHandler&, const Message& msg) {
        switch (msg.kind) {
            case MessageKind::connected:
                sink_for(msg.channel_id);
                break;
            case MessageKind::data: {
                auto& sink = sink_for(msg.channel_id);
                sink.file.write(reinterpret_cast<const char*>(msg.payload.data()),
                                static_cast<std::streamsize>(msg.payload.size()));
                sink.file.flush();
                sink.bytes += msg.payload.size();
                sink.crc.update(msg.payload);
                break;
            }
            case MessageKind::disconnected:
                finish(msg.channel_id, out);
                break;
            case MessageKind::error:
                spdlog::warn("channel {} error {}", msg.channel_id.value,
                             msg.status ? status_name(*msg.status) : "");
                break;
        }
    });
    std::vector<ChannelId> open;
    for (const auto& [id, sink] : sinks) open.push_back(id);
    for (auto id : open) finish(id, out);
    return rc;
}

int run_echo(const CliConfig& config, std::ostream& out) {
    return run_server(config, out, [](ChannelHandler& handler, const Message& msg) {
        if (msg.kind == MessageKind::data) {
            handler.send_to_channel(Message::data(msg.channel_id, msg.payload));
        } else {
            spdlog::info("channel {} {}", msg.channel_id.value, kind_name(msg.kind));
        }
    });
}

}  // namespace channelctl
