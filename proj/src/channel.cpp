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
#include "xchannel/channel.hpp"

namespace xchannel {

Status ChannelBase::create() {
    std::lock_guard lock(lifecycle_);
    if (state_.load() != State::fresh) return Status::closed;
    state_.store(State::creating);
    Status result = do_create();
    if (result == Status::ok) {
        state_.store(State::created);
    } else {
        create_result_ = is_error(result) ? result : Status::socket_error;
        state_.store(State::failed);
    }
    return result;
}

Status ChannelBase::destroy() {
    std::lock_guard lock(lifecycle_);
    if (state_.load() == State::destroyed) return Status::ok;
    queue_.close();
    do_destroy();
    state_.store(State::destroyed);
    return Status::ok;
}

Status ChannelBase::status() const {
    switch (state_.load()) {
        case State::creating:
        case State::created: return do_status();
        case State::failed: return create_result_;
        case State::fresh:
        case State::destroyed: break;
    }
    return Status::closed;
}

void ChannelBase::add_message(Message msg) {
    const State state = state_.load();
    if ((state != State::created && state != State::creating) || msg.kind != MessageKind::data) return;
    do_add(std::move(msg.payload));
}

void ChannelBase::do_add(Bytes payload) { queue_.push(std::move(payload)); }

}  // namespace xchannel
