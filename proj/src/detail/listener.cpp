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
#include "detail/listener.hpp"

#include <cerrno>
#include <chrono>
#include <cstring>

#include <spdlog/spdlog.h>

namespace xchannel::detail {

Status ListenerChannel::do_create() {
    auto listener = listen_tcp(bind_);
    if (!listener) return listener.status();
    listener_ = std::move(listener).value();
    acceptor_ = std::jthread([this] { accept_loop(); });
    return Status::ok;
}

void ListenerChannel::do_destroy() {
    wake_.signal();
    if (acceptor_.joinable()) acceptor_.join();
    listener_.reset();
}

void ListenerChannel::accept_loop() {
    for (;;) {
        auto ready = wait_readable(listener_.fd(), wake_, -1);
        if (ready == Readiness::woken) return;
        if (ready != Readiness::readable) continue;

        auto accepted = accept_tcp(listener_);
        if (!accepted) {
            if (errno == EAGAIN || errno == EINTR || errno == ECONNABORTED) continue;
            spdlog::warn("channel {}: accept failed: {}", id().value, std::strerror(errno));
            host().on_channel_message(Message::error(id(), Status::socket_error));
            std::this_thread::sleep_for(std::chrono::milliseconds(50));
            continue;
        }

        const ChannelId child_id = host().allocate_id();
        auto child = make_child_(child_id, std::move(accepted).value());
        if (host().attach_child(id(), child) != Status::ok) {
            child->destroy();
            continue;
        }
        if (child->create() != Status::ok) host().child_closed(child_id);
    }
}

}  // namespace xchannel::detail
