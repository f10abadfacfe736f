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
#include "detail/socket.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/eventfd.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <memory>
#include <string>
#include <system_error>

namespace xchannel::detail {

void Socket::reset() noexcept {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

void Socket::shutdown() noexcept {
    if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

WakeEvent::WakeEvent() : fd_(::eventfd(0, EFD_NONBLOCK | EFD_CLOEXEC)) {
    if (!fd_) throw std::system_error(errno, std::generic_category(), "eventfd");
}

void WakeEvent::signal() noexcept {
    std::uint64_t one = 1;
    [[maybe_unused]] auto n = ::write(fd_.fd(), &one, sizeof one);
}

Readiness wait_readable(int fd, const WakeEvent& wake, int timeout_ms) {
    pollfd fds[2] = {{fd, POLLIN, 0}, {wake.fd(), POLLIN, 0}};
    for (;;) {
        int n = ::poll(fds, 2, timeout_ms);
        if (n < 0) {
            if (errno == EINTR) continue;
            return Readiness::error;
        }
        if (n == 0) return Readiness::timeout;
        if (fds[1].revents != 0) return Readiness::woken;
        return Readiness::readable;
    }
}

namespace {

struct AddrInfoDeleter {
    void operator()(addrinfo* ai) const noexcept { ::freeaddrinfo(ai); }
};
using AddrInfoPtr = std::unique_ptr<addrinfo, AddrInfoDeleter>;

Result<AddrInfoPtr> resolve(const Endpoint& endpoint, int socktype, bool passive) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = socktype;
    hints.ai_flags = AI_NUMERICSERV | (passive ? AI_PASSIVE : 0);
    addrinfo* out = nullptr;
    const std::string port = std::to_string(endpoint.port);
    if (::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &out) != 0 || out == nullptr) {
        return Status::bad_info;
    }
    return AddrInfoPtr(out);
}

template <class Setup>
Result<Socket> open_first(const Endpoint& endpoint, int socktype, bool passive, Setup&& setup) {
    auto resolved = resolve(endpoint, socktype, passive);
    if (!resolved) return resolved.status();
    for (addrinfo* ai = resolved->get(); ai != nullptr; ai = ai->ai_next) {
        Socket s(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol));
        if (!s) continue;
        if (setup(s, ai)) return s;
    }
    return Status::socket_error;
}

}  // namespace

Result<Socket> listen_tcp(const Endpoint& endpoint, int backlog) {
    return open_first(endpoint, SOCK_STREAM, true, [backlog](Socket& s, addrinfo* ai) {
        int one = 1;
        ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(s.fd(), ai->ai_addr, ai->ai_addrlen) != 0 || ::listen(s.fd(), backlog) != 0) {
            return false;
        }
        // poll() precedes accept(); a connection reset in between must not block
        ::fcntl(s.fd(), F_SETFL, ::fcntl(s.fd(), F_GETFL) | O_NONBLOCK);
        return true;
    });
}

Result<Socket> connect_tcp(const Endpoint& endpoint) {
    return open_first(endpoint, SOCK_STREAM, false, [](Socket& s, addrinfo* ai) {
        int rc;
        do {
            rc = ::connect(s.fd(), ai->ai_addr, ai->ai_addrlen);
        } while (rc != 0 && errno == EINTR);
        return rc == 0;
    });
}

Result<Socket> bind_udp(const Endpoint& endpoint) {
    return open_first(endpoint, SOCK_DGRAM, true, [](Socket& s, addrinfo* ai) {
        return ::bind(s.fd(), ai->ai_addr, ai->ai_addrlen) == 0;
    });
}

Result<Socket> connect_udp(const Endpoint& endpoint) {
    return open_first(endpoint, SOCK_DGRAM, false, [](Socket& s, addrinfo* ai) {
        return ::connect(s.fd(), ai->ai_addr, ai->ai_addrlen) == 0;
    });
}

Result<Accepted> accept_tcp(const Socket& listener) {
    sockaddr_storage addr{};
    socklen_t len = sizeof addr;
    int fd = ::accept4(listener.fd(), reinterpret_cast<sockaddr*>(&addr), &len, SOCK_CLOEXEC);
    if (fd < 0) return Status::socket_error;
    return Accepted{Socket(fd), endpoint_from(addr, len)};
}

bool write_all(int fd, std::span<const std::uint8_t> bytes) noexcept {
    while (!bytes.empty()) {
        ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        bytes = bytes.subspan(static_cast<std::size_t>(n));
    }
    return true;
}

void set_nodelay(int fd, bool on) noexcept {
    int value = on ? 1 : 0;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &value, sizeof value);
}

void set_recv_buffer(int fd, int bytes) noexcept {
    if (::setsockopt(fd, SOL_SOCKET, SO_RCVBUFFORCE, &bytes, sizeof bytes) != 0) {
        ::setsockopt(fd, SOL_SOCKET, SO_RCVBUF, &bytes, sizeof bytes);
    }
}

Result<SockAddr> to_sockaddr(const Endpoint& endpoint, int socktype) {
    auto resolved = resolve(endpoint, socktype, false);
    if (!resolved) return resolved.status();
    SockAddr out;
    std::memcpy(&out.storage, resolved->get()->ai_addr, resolved->get()->ai_addrlen);
    out.length = resolved->get()->ai_addrlen;
    return out;
}

Endpoint endpoint_from(const sockaddr_storage& addr, socklen_t len) {
    char host[NI_MAXHOST] = {};
    char port[NI_MAXSERV] = {};
    if (::getnameinfo(reinterpret_cast<const sockaddr*>(&addr), len, host, sizeof host, port,
                      sizeof port, NI_NUMERICHOST | NI_NUMERICSERV) != 0) {
        return Endpoint{};
    }
    return Endpoint{host, static_cast<std::uint16_t>(std::stoul(port))};
}

Result<Endpoint> local_endpoint(int fd) {
    sockaddr_storage addr{};
    socklen_t len = sizeof addr;
    if (::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) return Status::socket_error;
    return endpoint_from(addr, len);
}

}  // namespace xchannel::detail
