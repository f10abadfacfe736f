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
#include "xchannel/handler.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

namespace xchannel {

ChannelHandler::ChannelHandler() : ChannelHandler(HandlerOptions{}) {}

ChannelHandler::ChannelHandler(HandlerOptions options) : options_(options) {
    reaper_ = std::jthread([this](std::stop_token stop) { reap_loop(stop); });
}

ChannelHandler::~ChannelHandler() { shutdown(); }

Result<ChannelId> ChannelHandler::create_channel(const ChannelInfo& info) {
    {
        std::lock_guard lock(mutex_);
        if (phase_ != Phase::running) return Status::closed;
    }
    const ChannelId id{next_id_.fetch_add(1)};
    auto made = registry_.make(info, id, host_);
    if (!made) return made.status();
    auto component = std::move(made).value();

    const Status created = component->create();
    if (created != Status::ok) {
        component->destroy();
        return is_error(created) ? created : Status::socket_error;
    }
    {
        std::unique_lock lock(mutex_);
        if (phase_ == Phase::running) {
            channels_.emplace(id, Entry{component, kNoChannel});
            return id;
        }
    }
    component->destroy();
    return Status::closed;
}

Status ChannelHandler::destroy_channel(ChannelId id) {
    std::shared_ptr<ChannelComponent> component;
    {
        std::lock_guard lock(mutex_);
        auto it = channels_.find(id);
        if (it == channels_.end()) return Status::not_found;
        component = std::move(it->second.component);
        channels_.erase(it);
    }
    // The listener goes first so no child can appear after the sweep below.
    const Status result = component->destroy();
    for (auto& [child_id, child] : take_children(id)) destroy_child(child_id, child);
    return result;
}

Status ChannelHandler::send_to_channel(Message msg) {
    if (msg.kind != MessageKind::data) return Status::bad_info;
    std::shared_ptr<ChannelComponent> component;
    {
        std::lock_guard lock(mutex_);
        if (phase_ != Phase::running) return Status::closed;
        auto it = channels_.find(msg.channel_id);
        if (it == channels_.end()) return Status::not_found;
        component = it->second.component;
    }
    component->add_message(std::move(msg));
    return Status::ok;
}

Result<Message> ChannelHandler::get_message() {
    std::lock_guard lock(queue_mutex_);
    if (!incoming_.empty()) {
        Message msg = std::move(incoming_.front());
        incoming_.pop_front();
        return msg;
    }
    return accepting_.load() ? Status::no_messages : Status::closed;
}

Result<Message> ChannelHandler::wait_message(std::chrono::milliseconds timeout) {
    std::unique_lock lock(queue_mutex_);
    queue_ready_.wait_for(lock, timeout, [this] { return !incoming_.empty() || !accepting_.load(); });
    if (!incoming_.empty()) {
        Message msg = std::move(incoming_.front());
        incoming_.pop_front();
        return msg;
    }
    return accepting_.load() ? Status::no_messages : Status::closed;
}

Status ChannelHandler::shutdown() {
    std::vector<std::pair<ChannelId, Entry>> entries;
    {
        std::lock_guard lock(mutex_);
        if (phase_ != Phase::running) return Status::ok;
        phase_ = Phase::closing;
        entries.assign(std::make_move_iterator(channels_.begin()),
                       std::make_move_iterator(channels_.end()));
        channels_.clear();
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (auto& [id, entry] : entries) {
        if (entry.parent.valid()) continue;
        if (Status s = entry.component->destroy(); is_error(s)) {
            spdlog::warn("shutdown: channel {} destroy returned {}", id.value, status_name(s));
        }
    }
    for (auto& [id, entry] : entries) {
        if (entry.parent.valid()) destroy_child(id, entry.component);
    }

    reaper_.request_stop();
    if (reaper_.joinable()) reaper_.join();

    {
        std::lock_guard lock(mutex_);
        phase_ = Phase::shut_down;
    }
    {
        std::lock_guard lock(queue_mutex_);
        accepting_.store(false);
    }
    queue_ready_.notify_all();
    return Status::ok;
}

Status ChannelHandler::channel_status(ChannelId id) const {
    auto component = find(id);
    return component ? component->status() : Status::not_found;
}

Result<ChannelStats> ChannelHandler::channel_stats(ChannelId id) const {
    auto component = find(id);
    if (!component) return Status::not_found;
    return component->stats();
}

std::vector<ChannelId> ChannelHandler::channels() const {
    std::lock_guard lock(mutex_);
    std::vector<ChannelId> out;
    out.reserve(channels_.size());
    for (const auto& [id, entry] : channels_) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t ChannelHandler::channel_count() const {
    std::lock_guard lock(mutex_);
    return channels_.size();
}

std::size_t ChannelHandler::pending_messages() const {
    std::lock_guard lock(queue_mutex_);
    return incoming_.size();
}

std::shared_ptr<ChannelComponent> ChannelHandler::find(ChannelId id) const {
    std::lock_guard lock(mutex_);
    auto it = channels_.find(id);
    return it == channels_.end() ? nullptr : it->second.component;
}

void ChannelHandler::enqueue(Message msg) {
    {
        std::lock_guard lock(queue_mutex_);
        incoming_.push_back(std::move(msg));
    }
    queue_ready_.notify_one();
}

std::vector<std::pair<ChannelId, std::shared_ptr<ChannelComponent>>> ChannelHandler::take_children(
    ChannelId parent) {
    std::vector<std::pair<ChannelId, std::shared_ptr<ChannelComponent>>> out;
    std::lock_guard lock(mutex_);
    for (auto it = channels_.begin(); it != channels_.end();) {
        if (it->second.parent == parent) {
            out.emplace_back(it->first, std::move(it->second.component));
            it = channels_.erase(it);
        } else {
            ++it;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

void ChannelHandler::destroy_child(ChannelId id, const std::shared_ptr<ChannelComponent>& child) {
    if (Status s = child->destroy(); is_error(s)) {
        spdlog::warn("child channel {} destroy returned {}", id.value, status_name(s));
    }
    enqueue(Message::disconnected(id));
}

void ChannelHandler::reap_loop(std::stop_token stop) {
    for (;;) {
        std::vector<std::pair<ChannelId, std::shared_ptr<ChannelComponent>>> batch;
        {
            std::unique_lock lock(reap_mutex_);
            reap_ready_.wait(lock, stop, [this] { return !retired_.empty(); });
            if (retired_.empty()) return;
            batch.swap(retired_);
        }
        for (auto& [id, child] : batch) {
            if (Status s = child->destroy(); is_error(s)) {
                spdlog::warn("retired channel {} destroy returned {}", id.value, status_name(s));
            }
        }
    }
}

Status ChannelHandler::Host::on_channel_message(Message msg) {
    auto& h = owner_;
    {
        std::lock_guard lock(h.queue_mutex_);
        if (!h.accepting_.load()) return Status::closed;
        if (h.options_.incoming_high_water != 0 && msg.kind == MessageKind::data &&
            h.incoming_.size() >= h.options_.incoming_high_water) {
            h.incoming_dropped_.fetch_add(1);
            return Status::closed;
        }
        h.incoming_.push_back(std::move(msg));
    }
    h.queue_ready_.notify_one();
    return Status::ok;
}

ChannelId ChannelHandler::Host::allocate_id() { return ChannelId{owner_.next_id_.fetch_add(1)}; }

Status ChannelHandler::Host::attach_child(ChannelId parent, std::shared_ptr<ChannelComponent> child) {
    std::lock_guard lock(owner_.mutex_);
    if (owner_.phase_ != Phase::running) return Status::closed;
    const ChannelId id = child->id();
    owner_.channels_.emplace(id, Entry{std::move(child), parent});
    return Status::ok;
}

void ChannelHandler::Host::child_closed(ChannelId child) {
    {
        // Unlink and retire atomically: shutdown either still finds the child
        // in the table or the reaper is guaranteed to see it before exiting.
        std::lock_guard lock(owner_.mutex_);
        auto it = owner_.channels_.find(child);
        if (it == owner_.channels_.end()) return;
        std::lock_guard reap_lock(owner_.reap_mutex_);
        owner_.retired_.emplace_back(child, std::move(it->second.component));
        owner_.channels_.erase(it);
    }
    owner_.reap_ready_.notify_one();
    owner_.enqueue(Message::disconnected(child));
}

}  // namespace xchannel
