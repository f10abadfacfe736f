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

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "xchannel/endpoint.hpp"
#include "xchannel/message.hpp"

namespace xchannel {

/// Connection emulation for datagram servers.
///
/// Every distinct source (address, port) seen becomes a virtual connection
/// with its own child channel ID. The first datagram from a source yields
/// CONNECTED followed by DATA; later ones yield DATA on the same ID. Peers
/// silent for longer than the idle timeout are forgotten, and contacting
/// the server again starts a new connection with a fresh ID.
///
/// Not synchronized; the owner serializes access.
class UdpDemux {
public:
    using Clock = std::chrono::steady_clock;
    using IdAllocator = std::function<ChannelId()>;

    static constexpr std::chrono::milliseconds kDefaultIdleTimeout{60'000};

    /// An idle timeout of zero disables expiry.
    UdpDemux(IdAllocator allocate, std::chrono::milliseconds idle_timeout);

    struct Outcome {
        ChannelId child;
        bool is_new = false;
        std::vector<Message> messages;
    };

    Outcome demux(Bytes payload, const Endpoint& source, Clock::time_point now);

    /// Removes peers idle for strictly longer than the timeout and returns
    /// their IDs in ascending order.
    std::vector<ChannelId> expire(Clock::time_point now);

    /// expire() expressed as the DISCONNECTED notifications it implies.
    std::vector<Message> sweep(Clock::time_point now);

    /// Outbound traffic also counts as activity.
    void touch(ChannelId child, Clock::time_point now);

    bool forget(ChannelId child);

    std::optional<ChannelId> find(const Endpoint& source) const;
    std::optional<Endpoint> endpoint_of(ChannelId child) const;
    std::size_t size() const noexcept { return by_source_.size(); }
    std::chrono::milliseconds idle_timeout() const noexcept { return idle_timeout_; }

private:
    struct Peer {
        Endpoint source;
        Clock::time_point last_seen;
    };

    IdAllocator allocate_;
    std::chrono::milliseconds idle_timeout_;
    std::map<Endpoint, ChannelId> by_source_;
    std::unordered_map<ChannelId, Peer> by_child_;
};

}  // namespace xchannel
