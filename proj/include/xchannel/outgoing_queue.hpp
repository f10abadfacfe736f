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
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>

#include "xchannel/message.hpp"

namespace xchannel {

struct ChannelStats {
    std::size_t capacity = 0;
    std::size_t queued = 0;      // waiting plus the one being written
    std::uint64_t dropped = 0;   // rejected by a full queue
    std::uint64_t sent = 0;      // handed to the wire
};

/// Bounded FIFO between add_message callers and a channel's writer.
///
/// push never blocks: when `capacity` payloads are already waiting the new
/// one is dropped and counted. The payload currently being written does
/// not occupy a slot.
class OutgoingQueue {
public:
    explicit OutgoingQueue(std::size_t capacity) : capacity_(capacity) {}

    OutgoingQueue(const OutgoingQueue&) = delete;
    OutgoingQueue& operator=(const OutgoingQueue&) = delete;

    enum class PushResult { queued, dropped, closed };

    PushResult push(Bytes payload);

    /// Blocks until a payload is available or the queue is closed. The
    /// returned payload counts as in flight until complete() is called.
    std::optional<Bytes> pop();

    /// Like pop() but gives up after `timeout`.
    std::optional<Bytes> pop_for(std::chrono::milliseconds timeout);

    /// The in-flight payload reached the wire (or was abandoned).
    void complete(bool sent = true);

    /// Discards waiting payloads and wakes every blocked pop().
    void close();

    bool closed() const;
    ChannelStats stats() const;

private:
    std::optional<Bytes> take_locked();

    const std::size_t capacity_;
    mutable std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<Bytes> items_;
    bool in_flight_ = false;
    bool closed_ = false;
    std::uint64_t dropped_ = 0;
    std::uint64_t sent_ = 0;
};

}  // namespace xchannel
