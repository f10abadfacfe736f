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

#include <cassert>
#include <optional>
#include <utility>

#include "xchannel/status.hpp"

namespace xchannel {

/// A status code paired with a value that is present only on Status::ok.
template <class T>
class Result {
public:
    Result(T value) : status_(Status::ok), value_(std::move(value)) {}  // NOLINT
    Result(Status status) : status_(status) { assert(status != Status::ok); }  // NOLINT

    Status status() const noexcept { return status_; }
    bool ok() const noexcept { return status_ == Status::ok; }
    explicit operator bool() const noexcept { return ok(); }

    T& value() & { return *value_; }
    const T& value() const& { return *value_; }
    T&& value() && { return std::move(*value_); }

    T* operator->() { return &*value_; }
    const T* operator->() const { return &*value_; }
    T& operator*() & { return *value_; }
    const T& operator*() const& { return *value_; }

    const std::optional<T>& optional() const noexcept { return value_; }

private:
    Status status_;
    std::optional<T> value_;
};

}  // namespace xchannel
