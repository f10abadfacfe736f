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
#include "xchannel/outgoing_queue.hpp"

namespace xchannel {

OutgoingQueue::PushResult OutgoingQueue::push(Bytes payload) {
    {
        std::lock_guard lock(mutex_);
        if (closed_) return PushResult::closed;
        if (items_.size() >= capacity_) {
            ++dropped_;
            return PushResult::dropped;
        }
        items_.push_back(std::move(payload));
    }
    ready_.notify_one();
    return PushResult::queued;
}

std::optional<Bytes> OutgoingQueue::take_locked() {
    if (closed_ || items_.empty()) return std::nullopt;
    Bytes front = std::move(items_.front());
    items_.pop_front();
    in_flight_ = true;
    return front;
}

std::optional<Bytes> OutgoingQueue::pop() {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [this] { return closed_ || !items_.empty(); });
    return take_locked();
}

std::optional<Bytes> OutgoingQueue::pop_for(std::chrono::milliseconds timeout) {
    std::unique_lock lock(mutex_);
    ready_.wait_for(lock, timeout, [this] { return closed_ || !items_.empty(); });
    return take_locked();
}

void OutgoingQueue::complete(bool sent) {
    std::lock_guard lock(mutex_);
    in_flight_ = false;
    if (sent) ++sent_;
}

void OutgoingQueue::close() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
        items_.clear();
    }
    ready_.notify_all();
}

bool OutgoingQueue::closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
}

ChannelStats OutgoingQueue::stats() const {
    std::lock_guard lock(mutex_);
    return ChannelStats{capacity_, items_.size() + (in_flight_ ? 1 : 0), dropped_, sent_};
}

}  // namespace xchannel
