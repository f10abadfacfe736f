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

#include <functional>
#include <memory>
#include <thread>

#include "detail/socket.hpp"
#include "xchannel/channel.hpp"

namespace xchannel::detail {

/// Accepting half of a TCP-based server channel. Each accepted connection
/// becomes a child channel built by `make_child`, attached to the host and
/// then created. The child announces itself with CONNECTED.
///
/// Listener channels have no wire of their own: their outgoing queue has
/// zero capacity, so add_message only counts a drop.
class ListenerChannel final : public ChannelBase {
public:
    using ChildMaker =
        std::function<std::shared_ptr<ChannelComponent>(ChannelId child, Accepted accepted)>;

    ListenerChannel(ChannelId id, ChannelHost& host, Endpoint bind, ChildMaker make_child)
        : ChannelBase(id, host, 0), bind_(std::move(bind)), make_child_(std::move(make_child)) {}

    ~ListenerChannel() override { destroy(); }

private:
    Status do_create() override;
    void do_destroy() override;
    Status do_status() const override { return Status::ok; }

    void accept_loop();

    Endpoint bind_;
    ChildMaker make_child_;
    Socket listener_;
    WakeEvent wake_;
    std::jthread acceptor_;
};

}  // namespace xchannel::detail
