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
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <vector>

#include "xchannel/channel.hpp"
#include "xchannel/channel_info.hpp"
#include "xchannel/registry.hpp"
#include "xchannel/result.hpp"

namespace xchannel {

struct HandlerOptions {
    /// When non-zero, DATA arriving while this many messages are already
    /// waiting in the incoming queue is discarded and counted. Lifecycle
    /// notifications are always admitted.
    std::size_t incoming_high_water = 0;
};

/// The platform facade: channel lifecycle by ID, outbound routing and one
/// shared, polled incoming queue for everything every channel receives.
///
/// All operations are thread-safe. IDs start at 1 and are never reused.
class ChannelHandler {
public:
    ChannelHandler();
    explicit ChannelHandler(HandlerOptions options);
    ~ChannelHandler();

    ChannelHandler(const ChannelHandler&) = delete;
    ChannelHandler& operator=(const ChannelHandler&) = delete;

    /// Resolves the factory for `info.type`, allocates an ID and creates the
    /// channel. Status::bad_info for unknown types or invalid descriptors;
    /// otherwise the component's own create() error is passed through.
    Result<ChannelId> create_channel(const ChannelInfo& info);

    /// Destroys a channel. Destroying a server also destroys every child it
    /// spawned and queues one DISCONNECTED per child.
    Status destroy_channel(ChannelId id);

    /// Routes a DATA message to `msg.channel_id`. Delivery is asynchronous.
    Status send_to_channel(Message msg);

    /// Non-blocking poll of the incoming queue. Status::no_messages when
    /// empty; Status::closed once shut down and drained.
    Result<Message> get_message();

    /// Like get_message() but waits up to `timeout` for a message.
    Result<Message> wait_message(std::chrono::milliseconds timeout);

    /// Destroys every channel and stops accepting work. Messages already
    /// queued stay retrievable. Idempotent.
    Status shutdown();

    Status channel_status(ChannelId id) const;
    Result<ChannelStats> channel_stats(ChannelId id) const;

    /// Live channels, children included.
    std::vector<ChannelId> channels() const;
    std::size_t channel_count() const;
    std::size_t pending_messages() const;
    std::uint64_t incoming_dropped() const noexcept { return incoming_dropped_.load(); }

    FactoryRegistry& registry() noexcept { return registry_; }

    /// The single upward callback shared by every channel of this handler.
    ChannelCallback& callback() noexcept { return host_; }

private:
    class Host final : public ChannelHost {
    public:
        explicit Host(ChannelHandler& owner) : owner_(owner) {}
        Status on_channel_message(Message msg) override;
        ChannelId allocate_id() override;
        Status attach_child(ChannelId parent, std::shared_ptr<ChannelComponent> child) override;
        void child_closed(ChannelId child) override;

    private:
        ChannelHandler& owner_;
    };

    struct Entry {
        std::shared_ptr<ChannelComponent> component;
        ChannelId parent;
    };

    enum class Phase { running, closing, shut_down };

    std::shared_ptr<ChannelComponent> find(ChannelId id) const;
    void enqueue(Message msg);
    std::vector<std::pair<ChannelId, std::shared_ptr<ChannelComponent>>> take_children(ChannelId parent);
    void destroy_child(ChannelId id, const std::shared_ptr<ChannelComponent>& child);
    void reap_loop(std::stop_token stop);

    HandlerOptions options_;
    FactoryRegistry registry_;
    Host host_{*this};

    mutable std::mutex mutex_;
    std::unordered_map<ChannelId, Entry> channels_;
    Phase phase_ = Phase::running;
    std::atomic<std::uint32_t> next_id_{1};

    mutable std::mutex queue_mutex_;
    std::condition_variable queue_ready_;
    std::deque<Message> incoming_;
    std::atomic<bool> accepting_{true};
    std::atomic<std::uint64_t> incoming_dropped_{0};

    std::mutex reap_mutex_;
    std::condition_variable_any reap_ready_;
    std::vector<std::pair<ChannelId, std::shared_ptr<ChannelComponent>>> retired_;
    std::jthread reaper_;
};

}  // namespace xchannel
