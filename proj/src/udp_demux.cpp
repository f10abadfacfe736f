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
#include "xchannel/udp_demux.hpp"

#include <algorithm>

namespace xchannel {

UdpDemux::UdpDemux(IdAllocator allocate, std::chrono::milliseconds idle_timeout)
    : allocate_(std::move(allocate)), idle_timeout_(idle_timeout) {}

UdpDemux::Outcome UdpDemux::demux(Bytes payload, const Endpoint& source, Clock::time_point now) {
    Outcome out;
    if (auto it = by_source_.find(source); it != by_source_.end()) {
        out.child = it->second;
        by_child_[out.child].last_seen = now;
    } else {
        out.child = allocate_();
        out.is_new = true;
        by_source_.emplace(source, out.child);
        by_child_.emplace(out.child, Peer{source, now});
        out.messages.push_back(Message::connected(out.child, source));
    }
    auto data = Message::data(out.child, std::move(payload));
    data.remote = source;
    out.messages.push_back(std::move(data));
    return out;
}

std::vector<ChannelId> UdpDemux::expire(Clock::time_point now) {
    std::vector<ChannelId> expired;
    if (idle_timeout_.count() == 0) return expired;
    for (const auto& [child, peer] : by_child_) {
        if (now - peer.last_seen > idle_timeout_) expired.push_back(child);
    }
    std::sort(expired.begin(), expired.end());
    for (auto child : expired) forget(child);
    return expired;
}

std::vector<Message> UdpDemux::sweep(Clock::time_point now) {
    std::vector<Message> out;
    for (auto child : expire(now)) out.push_back(Message::disconnected(child));
    return out;
}

void UdpDemux::touch(ChannelId child, Clock::time_point now) {
    if (auto it = by_child_.find(child); it != by_child_.end()) {
        it->second.last_seen = std::max(it->second.last_seen, now);
    }
}

bool UdpDemux::forget(ChannelId child) {
    auto it = by_child_.find(child);
    if (it == by_child_.end()) return false;
    by_source_.erase(it->second.source);
    by_child_.erase(it);
    return true;
}

std::optional<ChannelId> UdpDemux::find(const Endpoint& source) const {
    auto it = by_source_.find(source);
    if (it == by_source_.end()) return std::nullopt;
    return it->second;
}

std::optional<Endpoint> UdpDemux::endpoint_of(ChannelId child) const {
    auto it = by_child_.find(child);
    if (it == by_child_.end()) return std::nullopt;
    return it->second.source;
}

}  // namespace xchannel
