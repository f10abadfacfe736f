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
#include "xchannel/udp_channel.hpp"

#include <sys/socket.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <mutex>
#include <optional>
#include <thread>

#include "detail/socket.hpp"
#include "xchannel/udp_demux.hpp"

namespace xchannel {

namespace {

using Clock = UdpDemux::Clock;

constexpr std::uint64_t kDefaultRecvBuffer = 4u << 20;
constexpr std::size_t kDatagramBuffer = 65536;

/// State shared by a server and its per-peer children. The socket outlives
/// the server object until the last child is gone.
struct UdpShared {
    UdpShared(UdpDemux::IdAllocator allocate, std::chrono::milliseconds idle)
        : demux(std::move(allocate), idle) {}

    std::mutex mutex;
    detail::Socket socket;
    UdpDemux demux;
    bool closed = false;
};

bool send_datagram(int fd, const Bytes& payload, const detail::SockAddr* to);

/// Emulated connection to one remote source. Replies leave through the
/// server's socket so the peer sees a stable source port.
class UdpPeerChannel final : public ChannelBase {
public:
    UdpPeerChannel(ChannelId id, ChannelHost& host, std::size_t capacity,
                   std::shared_ptr<UdpShared> shared, Endpoint remote)
        : ChannelBase(id, host, capacity), shared_(std::move(shared)), remote_(std::move(remote)) {
        if (auto addr = detail::to_sockaddr(remote_)) address_ = *addr;
    }

    ~UdpPeerChannel() override { destroy(); }

private:
    Status do_create() override {
        writer_ = std::jthread([this] { write_loop(); });
        return Status::ok;
    }

    void do_destroy() override {
        if (writer_.joinable()) writer_.join();
        std::lock_guard lock(shared_->mutex);
        shared_->demux.forget(id());
    }

    Status do_status() const override {
        std::lock_guard lock(shared_->mutex);
        return shared_->closed ? Status::socket_error : Status::ok;
    }

    void write_loop() {
        while (auto payload = queue().pop()) {
            int fd = -1;
            {
                std::lock_guard lock(shared_->mutex);
                if (!shared_->closed) {
                    fd = shared_->socket.fd();
                    shared_->demux.touch(id(), Clock::now());
                }
            }
            const bool ok = fd >= 0 && address_ && send_datagram(fd, *payload, &*address_);
            queue().complete(ok);
            if (!ok) host().on_channel_message(Message::error(id(), Status::socket_error));
        }
    }

    std::shared_ptr<UdpShared> shared_;
    Endpoint remote_;
    std::optional<detail::SockAddr> address_;
    std::jthread writer_;
};

class UdpServerChannel final : public ChannelBase {
public:
    UdpServerChannel(ChannelId id, ChannelHost& host, Endpoint bind, std::size_t child_capacity,
                     std::chrono::milliseconds idle, int recv_buffer)
        : ChannelBase(id, host, 0),
          bind_(std::move(bind)),
          child_capacity_(child_capacity),
          recv_buffer_(recv_buffer),
          shared_(std::make_shared<UdpShared>([&host] { return host.allocate_id(); }, idle)) {}

    ~UdpServerChannel() override { destroy(); }

private:
    Status do_create() override {
        auto bound = detail::bind_udp(bind_);
        if (!bound) return bound.status();
        detail::set_recv_buffer(bound->fd(), recv_buffer_);
        {
            std::lock_guard lock(shared_->mutex);
            shared_->socket = std::move(bound).value();
            fd_ = shared_->socket.fd();
        }
        receiver_ = std::jthread([this] { receive_loop(); });
        return Status::ok;
    }

    void do_destroy() override {
        wake_.signal();
        if (receiver_.joinable()) receiver_.join();
        std::lock_guard lock(shared_->mutex);
        shared_->closed = true;
    }

    Status do_status() const override { return Status::ok; }

    int sweep_interval_ms() const {
        auto idle = shared_->demux.idle_timeout().count();
        if (idle == 0) return -1;
        return static_cast<int>(std::clamp<std::int64_t>(idle / 4, 10, 1000));
    }

    void receive_loop() {
        const int interval = sweep_interval_ms();
        auto next_sweep = Clock::now() + std::chrono::milliseconds(std::max(interval, 0));
        Bytes buffer(kDatagramBuffer);
        for (;;) {
            int timeout = -1;
            if (interval >= 0) {
                auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    next_sweep - Clock::now());
                timeout = static_cast<int>(std::max<std::int64_t>(left.count(), 0));
            }
            auto ready = detail::wait_readable(fd_, wake_, timeout);
            if (ready == detail::Readiness::woken) return;
            if (ready == detail::Readiness::readable) drain(buffer);
            if (interval >= 0 && Clock::now() >= next_sweep) {
                sweep();
                next_sweep = Clock::now() + std::chrono::milliseconds(interval);
            }
        }
    }

    void drain(Bytes& buffer) {
        for (;;) {
            sockaddr_storage from{};
            socklen_t len = sizeof from;
            ssize_t n = ::recvfrom(fd_, buffer.data(), buffer.size(), MSG_DONTWAIT,
                                   reinterpret_cast<sockaddr*>(&from), &len);
            if (n < 0) return;
            dispatch(Bytes(buffer.begin(), buffer.begin() + n), detail::endpoint_from(from, len));
        }
    }

    void dispatch(Bytes payload, const Endpoint& source) {
        // Emission happens under the shared lock so a concurrent child
        // destroy cannot slip its DISCONNECTED ahead of this DATA.
        std::unique_lock lock(shared_->mutex);
        auto outcome = shared_->demux.demux(std::move(payload), source, Clock::now());
        if (outcome.is_new) {
            // Start the child without the shared lock: its lifecycle lock
            // must never be taken inside ours (destroy takes them the other
            // way round). Nothing else can reach it until it is attached,
            // and only this thread touches the demux table in between.
            lock.unlock();
            auto child = std::make_shared<UdpPeerChannel>(outcome.child, host(), child_capacity_,
                                                          shared_, source);
            child->create();
            lock.lock();
            if (host().attach_child(id(), child) != Status::ok) {
                lock.unlock();
                child->destroy();  // forgets the demux entry
                return;
            }
        }
        for (auto& msg : outcome.messages) host().on_channel_message(std::move(msg));
    }

    void sweep() {
        std::vector<ChannelId> expired;
        {
            std::lock_guard lock(shared_->mutex);
            expired = shared_->demux.expire(Clock::now());
        }
        for (auto child : expired) host().child_closed(child);
    }

    Endpoint bind_;
    std::size_t child_capacity_;
    int recv_buffer_;
    std::shared_ptr<UdpShared> shared_;
    int fd_ = -1;
    detail::WakeEvent wake_;
    std::jthread receiver_;
};

class UdpClientChannel final : public ChannelBase {
public:
    UdpClientChannel(ChannelId id, ChannelHost& host, std::size_t capacity, Endpoint remote,
                     int recv_buffer)
        : ChannelBase(id, host, capacity), remote_(std::move(remote)), recv_buffer_(recv_buffer) {}

    ~UdpClientChannel() override { destroy(); }

private:
    Status do_create() override {
        auto connected = detail::connect_udp(remote_);
        if (!connected) return connected.status();
        socket_ = std::move(connected).value();
        detail::set_recv_buffer(socket_.fd(), recv_buffer_);
        reader_ = std::jthread([this] { read_loop(); });
        writer_ = std::jthread([this] { write_loop(); });
        return Status::ok;
    }

    void do_destroy() override {
        wake_.signal();
        if (reader_.joinable()) reader_.join();
        if (writer_.joinable()) writer_.join();
        socket_.reset();
    }

    Status do_status() const override {
        return refused_.load() ? Status::socket_error : Status::ok;
    }

    void read_loop() {
        Bytes buffer(kDatagramBuffer);
        for (;;) {
            auto ready = detail::wait_readable(socket_.fd(), wake_, -1);
            if (ready == detail::Readiness::woken) return;
            if (ready != detail::Readiness::readable) continue;
            ssize_t n = ::recv(socket_.fd(), buffer.data(), buffer.size(), MSG_DONTWAIT);
            if (n >= 0) {
                refused_.store(false);
                host().on_channel_message(
                    Message::data(id(), Bytes(buffer.begin(), buffer.begin() + n)));
            } else if (errno == ECONNREFUSED) {
                refused_.store(true);
                host().on_channel_message(Message::error(id(), Status::socket_error));
            }
        }
    }

    void write_loop() {
        while (auto payload = queue().pop()) {
            const bool ok = send_datagram(socket_.fd(), *payload, nullptr);
            queue().complete(ok);
            if (!ok) host().on_channel_message(Message::error(id(), Status::socket_error));
        }
    }

    Endpoint remote_;
    int recv_buffer_;
    detail::Socket socket_;
    detail::WakeEvent wake_;
    std::atomic<bool> refused_{false};
    std::jthread reader_;
    std::jthread writer_;
};

bool send_datagram(int fd, const Bytes& payload, const detail::SockAddr* to) {
    if (payload.size() > detail::kMaxUdpPayload) return false;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        ssize_t n;
        if (to == nullptr) {
            n = ::send(fd, payload.data(), payload.size(), MSG_NOSIGNAL);
        } else {
            n = ::sendto(fd, payload.data(), payload.size(), MSG_NOSIGNAL,
                         reinterpret_cast<const sockaddr*>(&to->storage), to->length);
        }
        if (n >= 0) return true;
        if (errno == EINTR) continue;
        if (errno == ENOBUFS || errno == EAGAIN) {
            std::this_thread::yield();
            continue;
        }
        return false;
    }
    return false;
}

struct UdpSettings {
    std::size_t capacity;
    int recv_buffer;
};

Result<UdpSettings> udp_settings(const ChannelInfo& info) {
    auto capacity = option_uint(info, option::queue_capacity, kDefaultQueueCapacity, 1);
    auto recv_buffer = option_uint(info, option::recv_buffer, kDefaultRecvBuffer, 1024, 1u << 30);
    if (!capacity || !recv_buffer) return Status::bad_info;
    return UdpSettings{*capacity, static_cast<int>(*recv_buffer)};
}

}  // namespace

Result<std::shared_ptr<ChannelComponent>> make_udp_server(const ChannelInfo& info, ChannelId id,
                                                          ChannelHost& host) {
    auto settings = udp_settings(info);
    auto idle = option_seconds(info, option::idle_timeout, UdpDemux::kDefaultIdleTimeout);
    if (!settings || !idle) return Status::bad_info;
    std::shared_ptr<ChannelComponent> server = std::make_shared<UdpServerChannel>(
        id, host, info.endpoint, settings->capacity, *idle, settings->recv_buffer);
    return server;
}

Result<std::shared_ptr<ChannelComponent>> make_udp_client(const ChannelInfo& info, ChannelId id,
                                                          ChannelHost& host) {
    auto settings = udp_settings(info);
    if (!settings) return Status::bad_info;
    std::shared_ptr<ChannelComponent> client = std::make_shared<UdpClientChannel>(
        id, host, settings->capacity, info.endpoint, settings->recv_buffer);
    return client;
}

}  // namespace xchannel
