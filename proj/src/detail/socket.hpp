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

#include <sys/socket.h>

#include <cstdint>
#include <span>
#include <utility>

#include "xchannel/endpoint.hpp"
#include "xchannel/result.hpp"

namespace xchannel::detail {

/// Owning file descriptor.
class Socket {
public:
    Socket() = default;
    explicit Socket(int fd) noexcept : fd_(fd) {}
    ~Socket() { reset(); }

    Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
    Socket& operator=(Socket&& other) noexcept {
        if (this != &other) {
            reset();
            fd_ = std::exchange(other.fd_, -1);
        }
        return *this;
    }
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;

    int fd() const noexcept { return fd_; }
    explicit operator bool() const noexcept { return fd_ >= 0; }

    void reset() noexcept;

    /// shutdown(2) both directions; wakes threads blocked in send/recv.
    void shutdown() noexcept;

private:
    int fd_ = -1;
};

/// eventfd used to interrupt poll() loops.
class WakeEvent {
public:
    WakeEvent();
    void signal() noexcept;
    int fd() const noexcept { return fd_.fd(); }

private:
    Socket fd_;
};

enum class Readiness { readable, woken, timeout, error };

/// Waits until `fd` is readable, `wake` is signalled or `timeout_ms` passes
/// (-1 waits forever). A signalled wake event stays signalled.
Readiness wait_readable(int fd, const WakeEvent& wake, int timeout_ms);

Result<Socket> listen_tcp(const Endpoint& endpoint, int backlog = 128);
Result<Socket> connect_tcp(const Endpoint& endpoint);
Result<Socket> bind_udp(const Endpoint& endpoint);
Result<Socket> connect_udp(const Endpoint& endpoint);

struct Accepted {
    Socket socket;
    Endpoint remote;
};
Result<Accepted> accept_tcp(const Socket& listener);

/// Blocking send of the whole span. False on any error (peer gone or the
/// socket was shut down).
bool write_all(int fd, std::span<const std::uint8_t> bytes) noexcept;

void set_nodelay(int fd, bool on) noexcept;
void set_recv_buffer(int fd, int bytes) noexcept;

struct SockAddr {
    sockaddr_storage storage{};
    socklen_t length = 0;
};

/// Numeric resolution of a literal address; DNS names resolve too.
Result<SockAddr> to_sockaddr(const Endpoint& endpoint, int socktype = SOCK_DGRAM);

Endpoint endpoint_from(const sockaddr_storage& addr, socklen_t len);
Result<Endpoint> local_endpoint(int fd);

inline constexpr std::size_t kMaxUdpPayload = 65507;

}  // namespace xchannel::detail
