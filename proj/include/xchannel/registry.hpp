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
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "xchannel/channel.hpp"
#include "xchannel/channel_info.hpp"
#include "xchannel/result.hpp"

namespace xchannel {

using ChannelFactory = std::function<Result<std::shared_ptr<ChannelComponent>>(
    const ChannelInfo&, ChannelId, ChannelHost&)>;

/// Maps channel type names to the component that implements them.
///
/// A default-constructed registry already holds the six built-in types.
class FactoryRegistry {
public:
    FactoryRegistry();

    struct Empty {};
    explicit FactoryRegistry(Empty) {}

    FactoryRegistry(const FactoryRegistry& other);
    FactoryRegistry& operator=(const FactoryRegistry&) = delete;

    /// Registers `type_name`. Only option keys in `option_keys` are accepted
    /// in a ChannelInfo for this type. Duplicate or empty names are
    /// rejected with Status::bad_info.
    Status register_type(std::string type_name, ChannelFactory factory,
                         std::set<std::string, std::less<>> option_keys = {});

    bool contains(std::string_view type_name) const;
    std::vector<std::string> types() const;

    /// Validates `info` (known type, valid endpoint, known option keys) and
    /// constructs the component. The component is not yet created.
    Result<std::shared_ptr<ChannelComponent>> make(const ChannelInfo& info, ChannelId id,
                                                   ChannelHost& host) const;

private:
    struct Entry {
        ChannelFactory factory;
        std::set<std::string, std::less<>> option_keys;
    };

    mutable std::mutex mutex_;
    std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace xchannel
