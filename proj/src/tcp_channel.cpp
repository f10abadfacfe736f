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
#include "xchannel/tcp_channel.hpp"

#include <sys/socket.h>

#include <atomic>
#include <cerrno>
#include <optional>
#include <thread>

#include "detail/listener.hpp"
#include "detail/socket.hpp"

namespace xchannel {

namespace {

struct TcpSettings {
    std::size_t queue_capacity = kDefaultQueueCapacity;
    std::size_t read_buffer = kDefaultReadBuffer;
    bool nodelay = true;
};

Result<TcpSettings> tcp_settings(const ChannelInfo& info) {
    auto capacity = option_uint(info, option::queue_capacity, kDefaultQueueCapacity, 1);
    auto read_buffer = option_uint(info, option::read_buffer, kDefaultReadBuffer, 1, 64 << 20);
    auto nodelay = option_bool(info, option::nodelay, true);
    if (!capacity || !read_buffer || !nodelay) return Status::bad_info;
    return TcpSettings{*capacity, *read_buffer, *nodelay};
}

/// One TCP connection: either dialled by a client channel or adopted from a
/// server's accept. A reader thread turns received bytes into DATA, a
/// writer thread drains the outgoing queue.
class TcpConnectionChannel final : public ChannelBase {
public:
    TcpConnectionChannel(ChannelId id, ChannelHost& host, TcpSettings settings, Endpoint remote)
        : ChannelBase(id, host, settings.queue_capacity), settings_(settings),
          remote_(std::move(remote)) {}

    TcpConnectionChannel(ChannelId id, ChannelHost& host, TcpSettings settings,
                         detail::Accepted accepted)
        : ChannelBase(id, host, settings.queue_capacity), settings_(settings),
          remote_(std::move(accepted.remote)), socket_(std::move(accepted.socket)), child_(true) {}

    ~TcpConnectionChannel() override { destroy(); }

private:
    Status do_create() override {
        if (!child_) {
            auto connected = detail::connect_tcp(remote_);
            if (!connected) return connected.status();
            socket_ = std::move(connected).value();
        }
        detail::set_nodelay(socket_.fd(), settings_.nodelay);
        healthy_.store(true);
        reader_ = std::jthread([this] { read_loop(); });
        writer_ = std::jthread([this] { write_loop(); });
        return Status::ok;
    }

    void do_destroy() override {
        stopping_.store(true);
        wake_.signal();
        socket_.shutdown();
        if (reader_.joinable()) reader_.join();
        if (writer_.joinable()) writer_.join();
        socket_.reset();
        healthy_.store(false);
    }

    Status do_status() const override {
        return healthy_.load() ? Status::ok : Status::socket_error;
    }

    void read_loop() {
        if (child_) host().on_channel_message(Message::connected(id(), remote_));
        Bytes buffer(settings_.read_buffer);
        for (;;) {
            auto ready = detail::wait_readable(socket_.fd(), wake_, -1);
            if (ready == detail::Readiness::woken) return;
            if (ready == detail::Readiness::error) {
                peer_lost();
                return;
            }
            if (ready != detail::Readiness::readable) continue;
            ssize_t n = ::recv(socket_.fd(), buffer.data(), buffer.size(), 0);
            if (n > 0) {
                host().on_channel_message(
                    Message::data(id(), Bytes(buffer.begin(), buffer.begin() + n)));
            } else if (n == 0 || (errno != EINTR && errno != EAGAIN)) {
                peer_lost();
                return;
            }
        }
    }

    void write_loop() {
        while (auto payload = queue().pop()) {
            const bool ok = payload->empty() || detail::write_all(socket_.fd(), *payload);
            queue().complete(ok);
            if (!ok) {
                peer_lost();
                return;
            }
        }
    }

    // Exactly one report per connection, and none during our own teardown.
    void peer_lost() {
        healthy_.store(false);
        if (stopping_.load() || lost_.exchange(true)) return;
        if (child_) {
            host().child_closed(id());
        } else {
            host().on_channel_message(Message::disconnected(id()));
        }
    }

    TcpSettings settings_;
    Endpoint remote_;
    detail::Socket socket_;
    detail::WakeEvent wake_;
    bool child_ = false;
    std::atomic<bool> healthy_{false};
    std::atomic<bool> stopping_{false};
    std::atomic<bool> lost_{false};
    std::jthread reader_;
    std::jthread writer_;
};

}  // namespace

Result<std::shared_ptr<ChannelComponent>> make_tcp_server(const ChannelInfo& info, ChannelId id,
                                                          ChannelHost& host) {
    auto settings = tcp_settings(info);
    if (!settings) return settings.status();
    std::shared_ptr<ChannelComponent> server = std::make_shared<detail::ListenerChannel>(
        id, host, info.endpoint,
        [&host, s = *settings](ChannelId child, detail::Accepted accepted) {
            return std::make_shared<TcpConnectionChannel>(child, host, s, std::move(accepted));
        });
    return server;
}

Result<std::shared_ptr<ChannelComponent>> make_tcp_client(const ChannelInfo& info, ChannelId id,
                                                          ChannelHost& host) {
    auto settings = tcp_settings(info);
    if (!settings) return settings.status();
    std::shared_ptr<ChannelComponent> client =
        std::make_shared<TcpConnectionChannel>(id, host, *settings, info.endpoint);
    return client;
}

}  // namespace xchannel
