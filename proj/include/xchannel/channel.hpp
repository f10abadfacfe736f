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

#include <atomic>
#include <memory>
#include <mutex>

#include "xchannel/message.hpp"
#include "xchannel/outgoing_queue.hpp"
#include "xchannel/status.hpp"

namespace xchannel {

/// Upward path for received traffic. Every channel of one handler shares a
/// single callback target, which feeds the handler's incoming queue.
class ChannelCallback {
public:
    virtual ~ChannelCallback() = default;

    /// Non-blocking; safe for concurrent producers.
    virtual Status on_channel_message(Message msg) = 0;
};

class ChannelComponent;

/// What a channel may ask of the platform beyond message delivery: fresh
/// IDs and registration of the child channels a server spawns.
class ChannelHost : public ChannelCallback {
public:
    virtual ChannelId allocate_id() = 0;

    /// Makes `child` routable under its own ID. Fails with Status::closed
    /// once the host is shutting down; the caller then owns the child's
    /// teardown.
    virtual Status attach_child(ChannelId parent, std::shared_ptr<ChannelComponent> child) = 0;

    /// A child lost its peer. The host unregisters it, emits its single
    /// DISCONNECTED and destroys it off the calling thread.
    virtual void child_closed(ChannelId child) = 0;
};

/// The contract every transport implements. The operation set is the same
/// for all channel types.
class ChannelComponent {
public:
    virtual ~ChannelComponent() = default;

    virtual ChannelId id() const noexcept = 0;

    /// Acquires transport resources and starts the I/O driver.
    virtual Status create() = 0;

    /// Stops the driver, closes sockets, discards queued output. Idempotent.
    virtual Status destroy() = 0;

    /// Health of the underlying connection; never blocks on I/O.
    virtual Status status() const = 0;

    /// Queues a DATA payload for transmission. Never blocks; a full queue
    /// drops the message and bumps the drop counter.
    virtual void add_message(Message msg) = 0;

    virtual ChannelStats stats() const = 0;
};

/// Shared New -> Created -> Destroyed state machine. Transports override
/// the do_* hooks; calls outside the valid states return Status::closed
/// without side effects.
class ChannelBase : public ChannelComponent {
public:
    ChannelId id() const noexcept final { return id_; }

    Status create() final;
    Status destroy() final;
    Status status() const final;
    void add_message(Message msg) final;
    ChannelStats stats() const override { return queue_.stats(); }

protected:
    // `creating` covers do_create() itself: a driver started there may
    // announce the channel before create() returns, and the application
    // must be able to answer straight away.
    enum class State { fresh, creating, created, failed, destroyed };

    ChannelBase(ChannelId id, ChannelHost& host, std::size_t queue_capacity)
        : id_(id), host_(host), queue_(queue_capacity) {}

    virtual Status do_create() = 0;
    virtual void do_destroy() = 0;
    virtual Status do_status() const = 0;

    /// Default: append to the outgoing queue for the writer to drain.
    virtual void do_add(Bytes payload);

    State state() const noexcept { return state_.load(); }

    ChannelHost& host() const noexcept { return host_; }
    OutgoingQueue& queue() noexcept { return queue_; }

private:
    const ChannelId id_;
    ChannelHost& host_;
    OutgoingQueue queue_;
    std::mutex lifecycle_;
    std::atomic<State> state_{State::fresh};
    Status create_result_ = Status::ok;
};

}  // namespace xchannel
