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
#include "xchannel/registry.hpp"

#include "xchannel/soap_channel.hpp"
#include "xchannel/tcp_channel.hpp"
#include "xchannel/udp_channel.hpp"

namespace xchannel {

namespace {

using Keys = std::set<std::string, std::less<>>;

Keys keys(std::initializer_list<std::string_view> list) {
    Keys out;
    for (auto k : list) out.emplace(k);
    return out;
}

}  // namespace

FactoryRegistry::FactoryRegistry() {
    using namespace option;
    const auto tcp_keys = keys({queue_capacity, read_buffer, nodelay});
    register_type(std::string(channel_type::tcp_server), make_tcp_server, tcp_keys);
    register_type(std::string(channel_type::tcp_client), make_tcp_client, tcp_keys);
    register_type(std::string(channel_type::udp_server), make_udp_server,
                  keys({queue_capacity, idle_timeout, recv_buffer}));
    register_type(std::string(channel_type::udp_client), make_udp_client,
                  keys({queue_capacity, recv_buffer}));
    register_type(std::string(channel_type::soap_server), make_soap_server,
                  keys({queue_capacity, read_buffer, nodelay, soap_urn, http_path, reply_wait_ms}));
    register_type(std::string(channel_type::soap_client), make_soap_client,
                  keys({queue_capacity, read_buffer, nodelay, soap_urn, http_path}));
}

FactoryRegistry::FactoryRegistry(const FactoryRegistry& other) {
    std::lock_guard lock(other.mutex_);
    entries_ = other.entries_;
}

Status FactoryRegistry::register_type(std::string type_name, ChannelFactory factory,
                                      std::set<std::string, std::less<>> option_keys) {
    if (type_name.empty() || !factory) return Status::bad_info;
    if (option_keys.empty()) option_keys.emplace(option::queue_capacity);
    std::lock_guard lock(mutex_);
    auto [it, inserted] =
        entries_.try_emplace(std::move(type_name), Entry{std::move(factory), std::move(option_keys)});
    return inserted ? Status::ok : Status::bad_info;
}

bool FactoryRegistry::contains(std::string_view type_name) const {
    std::lock_guard lock(mutex_);
    return entries_.find(type_name) != entries_.end();
}

std::vector<std::string> FactoryRegistry::types() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [name, entry] : entries_) out.push_back(name);
    return out;
}

Result<std::shared_ptr<ChannelComponent>> FactoryRegistry::make(const ChannelInfo& info,
                                                                ChannelId id,
                                                                ChannelHost& host) const {
    ChannelFactory factory;
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(info.type);
        if (it == entries_.end()) return Status::bad_info;
        for (const auto& [key, value] : info.options) {
            if (!it->second.option_keys.contains(key)) return Status::bad_info;
        }
        factory = it->second.factory;
    }
    if (!is_valid(info.endpoint)) return Status::bad_info;
    auto made = factory(info, id, host);
    if (made.ok() && *made == nullptr) return Status::bad_info;
    return made;
}

}  // namespace xchannel
