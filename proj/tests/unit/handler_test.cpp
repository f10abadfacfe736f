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
#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace xchannel;
using namespace xchannel::testing;
using namespace std::chrono_literals;

namespace {

ChannelInfo loopback_info() { return ChannelInfo{"mem-loopback", Endpoint{"local", 1}, {}}; }

class HandlerTest : public ::testing::Test {
protected:
    void SetUp() override { ASSERT_EQ(register_mem_loopback(handler.registry()), Status::ok); }
    ChannelHandler handler;
};

}  // namespace

TEST_F(HandlerTest, IdsStartAtOneAndAreNeverReused) {
    auto first = handler.create_channel(loopback_info());
    ASSERT_TRUE(first.ok());
    EXPECT_EQ(first->value, 1u);
    ASSERT_EQ(handler.destroy_channel(*first), Status::ok);

    std::set<std::uint32_t> seen{first->value};
    for (int i = 0; i < 100; ++i) {
        auto id = handler.create_channel(loopback_info());
        ASSERT_TRUE(id.ok());
        EXPECT_TRUE(seen.insert(id->value).second);
        if (i % 2) handler.destroy_channel(*id);
    }
}

TEST_F(HandlerTest, FailedCreateStillConsumesAnId) {
    auto bad = handler.create_channel(info("xyz", 1));
    ASSERT_FALSE(bad.ok());
    auto good = handler.create_channel(loopback_info());
    ASSERT_TRUE(good.ok());
    EXPECT_EQ(good->value, 2u);
}

TEST_F(HandlerTest, UnknownIdsAreNotFound) {
    EXPECT_EQ(handler.destroy_channel(ChannelId{99}), Status::not_found);
    EXPECT_EQ(handler.send_to_channel(Message::data(ChannelId{99}, to_bytes("x"))), Status::not_found);
    EXPECT_EQ(handler.channel_status(ChannelId{99}), Status::not_found);
    EXPECT_EQ(handler.channel_stats(ChannelId{99}).status(), Status::not_found);

    auto id = handler.create_channel(loopback_info());
    ASSERT_TRUE(id.ok());
    ASSERT_EQ(handler.destroy_channel(*id), Status::ok);
    EXPECT_EQ(handler.destroy_channel(*id), Status::not_found);
    EXPECT_EQ(handler.send_to_channel(Message::data(*id, {})), Status::not_found);
}

TEST_F(HandlerTest, OnlyDataCanBeSent) {
    auto id = handler.create_channel(loopback_info());
    ASSERT_TRUE(id.ok());
    EXPECT_EQ(handler.send_to_channel(Message::connected(*id, Endpoint{"h", 1})), Status::bad_info);
    EXPECT_EQ(handler.pending_messages(), 0u);
}

TEST_F(HandlerTest, EmptyQueueReportsNoMessages) {
    auto got = handler.get_message();
    EXPECT_EQ(got.status(), Status::no_messages);
    EXPECT_EQ(to_int(got.status()), 1);
    EXPECT_EQ(handler.wait_message(10ms).status(), Status::no_messages);
}

TEST_F(HandlerTest, IncomingQueueIsFifo) {
    auto id = handler.create_channel(loopback_info());
    ASSERT_TRUE(id.ok());
    for (int i = 0; i < 50; ++i) handler.send_to_channel(Message::data(*id, to_bytes(std::to_string(i))));
    for (int i = 0; i < 50; ++i) {
        auto msg = handler.get_message();
        ASSERT_TRUE(msg.ok());
        EXPECT_EQ(to_string(msg->payload), std::to_string(i));
    }
    EXPECT_EQ(handler.get_message().status(), Status::no_messages);
}

TEST_F(HandlerTest, ShutdownIsIdempotentAndKeepsQueuedMessages) {
    auto id = handler.create_channel(loopback_info());
    ASSERT_TRUE(id.ok());
    handler.send_to_channel(Message::data(*id, to_bytes("kept")));
    EXPECT_EQ(handler.shutdown(), Status::ok);
    EXPECT_EQ(handler.shutdown(), Status::ok);
    EXPECT_EQ(handler.channel_count(), 0u);

    auto msg = handler.get_message();
    ASSERT_TRUE(msg.ok());
    EXPECT_EQ(to_string(msg->payload), "kept");
    EXPECT_EQ(handler.get_message().status(), Status::closed);
    EXPECT_EQ(handler.create_channel(loopback_info()).status(), Status::closed);
    EXPECT_EQ(handler.callback().on_channel_message(Message::data(*id, {})), Status::closed);
}

TEST_F(HandlerTest, WaitWakesOnShutdown) {
    std::jthread stopper([this] {
        std::this_thread::sleep_for(50ms);
        handler.shutdown();
    });
    auto started = std::chrono::steady_clock::now();
    EXPECT_EQ(handler.wait_message(5s).status(), Status::closed);
    EXPECT_LT(std::chrono::steady_clock::now() - started, 2s);
}

TEST_F(HandlerTest, ConcurrentProducersLoseNothing) {
    ASSERT_EQ(register_burst(handler.registry()), Status::ok);
    constexpr int kChannels = 8;
    constexpr std::uint64_t kEach = 5000;
    std::vector<ChannelId> ids;
    for (int i = 0; i < kChannels; ++i) {
        auto id = handler.create_channel(
            ChannelInfo{"burst", Endpoint{"x", 1}, {{"count", std::to_string(kEach)}}});
        ASSERT_TRUE(id.ok());
        ids.push_back(*id);
    }
    auto all = collect_n(handler, kChannels * kEach, 20s);
    ASSERT_EQ(all.size(), kChannels * kEach);

    // Per-channel order is preserved even though channels interleave.
    std::map<std::uint32_t, std::uint64_t> next;
    for (const auto& m : all) {
        ASSERT_EQ(sequence_of(m.payload), next[m.channel_id.value]++);
    }
    for (auto id : ids) EXPECT_EQ(next[id.value], kEach);
    EXPECT_EQ(handler.incoming_dropped(), 0u);
}

TEST(HandlerHighWaterTest, DataBeyondHighWaterIsCounted) {
    ChannelHandler handler(HandlerOptions{.incoming_high_water = 10});
    auto& cb = handler.callback();
    for (int i = 0; i < 15; ++i) cb.on_channel_message(Message::data(ChannelId{7}, {}));
    EXPECT_EQ(handler.pending_messages(), 10u);
    EXPECT_EQ(handler.incoming_dropped(), 5u);
    // Lifecycle notifications are never discarded.
    EXPECT_EQ(cb.on_channel_message(Message::disconnected(ChannelId{7})), Status::ok);
    EXPECT_EQ(handler.pending_messages(), 11u);
}

TEST_F(HandlerTest, StatsReflectQueue) {
    auto id = handler.create_channel(loopback_info());
    ASSERT_TRUE(id.ok());
    auto stats = handler.channel_stats(*id);
    ASSERT_TRUE(stats.ok());
    EXPECT_EQ(stats->capacity, 16u);
    EXPECT_EQ(handler.channel_status(*id), Status::ok);
    EXPECT_EQ(handler.channels(), std::vector<ChannelId>{*id});
}
