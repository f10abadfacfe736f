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

#include <random>
#include <set>

#include "xchannel/channel_info.hpp"
#include "xchannel/endpoint.hpp"
#include "xchannel/message.hpp"
#include "xchannel/status.hpp"

using namespace xchannel;

TEST(StatusTest, CanonicalNames) {
    EXPECT_EQ(status_name(0), "CHANNEL_OK");
    EXPECT_EQ(status_name(1), "CHANNEL_NOMESSAGES");
    EXPECT_EQ(status_name(-7), "CHANNEL_ERR(-7)");
    EXPECT_EQ(status_name(Status::socket_error), "CHANNEL_SOCKETERR");
    EXPECT_EQ(status_name(Status::not_found), "CHANNEL_NOTFOUND");
    EXPECT_EQ(status_name(Status::bad_info), "CHANNEL_BADINFO");
    EXPECT_EQ(status_name(Status::closed), "CHANNEL_CLOSED");
    EXPECT_EQ(status_name(Status::protocol_error), "CHANNEL_PROTOERR");
}

TEST(StatusTest, ExactlyOneZeroOnePositiveRestNegative) {
    int zero = 0, positive = 0, negative = 0;
    std::set<int> distinct;
    for (auto s : kAllStatusCodes) {
        distinct.insert(to_int(s));
        if (to_int(s) == 0) ++zero;
        else if (to_int(s) > 0) ++positive;
        else ++negative;
        EXPECT_EQ(is_error(s), to_int(s) < 0);
    }
    EXPECT_EQ(zero, 1);
    EXPECT_EQ(positive, 1);
    EXPECT_EQ(negative, static_cast<int>(kAllStatusCodes.size()) - 2);
    EXPECT_EQ(distinct.size(), kAllStatusCodes.size());
    EXPECT_EQ(to_int(Status::no_messages), 1);
}

TEST(EndpointTest, ParsesIpv4) {
    auto e = parse_endpoint("127.0.0.1:9000");
    ASSERT_TRUE(e.ok());
    EXPECT_EQ(e->host, "127.0.0.1");
    EXPECT_EQ(e->port, 9000);
}

TEST(EndpointTest, ParsesBracketedIpv6) {
    auto e = parse_endpoint("[::1]:8080");
    ASSERT_TRUE(e.ok());
    EXPECT_EQ(e->host, "::1");
    EXPECT_EQ(e->port, 8080);
}

TEST(EndpointTest, RejectsMalformed) {
    for (const char* text : {"host:0", "host:65536", "host", ":80", "host:", "host:8o", "::1:80",
                             "[::1]80", "[::1]:", "[]:80", "[host]:80", "a:-1", "a:+5", ""}) {
        EXPECT_EQ(parse_endpoint(text).status(), Status::bad_info) << text;
    }
}

TEST(EndpointTest, FormatParseRoundTrip) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> port(1, 65535);
    std::uniform_int_distribution<int> octet(0, 255);
    std::uniform_int_distribution<int> hextet(0, 0xffff);
    for (int i = 0; i < 2000; ++i) {
        Endpoint e;
        switch (i % 3) {
            case 0:
                e.host = std::to_string(octet(rng)) + "." + std::to_string(octet(rng)) + "." +
                         std::to_string(octet(rng)) + "." + std::to_string(octet(rng));
                break;
            case 1: {
                char buf[64];
                std::snprintf(buf, sizeof buf, "fe80::%x:%x", hextet(rng), hextet(rng));
                e.host = buf;
                break;
            }
            default: e.host = "host-" + std::to_string(i) + ".example"; break;
        }
        e.port = static_cast<std::uint16_t>(port(rng));
        auto parsed = parse_endpoint(format_endpoint(e));
        ASSERT_TRUE(parsed.ok()) << format_endpoint(e);
        EXPECT_EQ(*parsed, e);
    }
}

TEST(MessageTest, PayloadIsPreservedVerbatim) {
    Bytes original;
    for (int i = 0; i < 256; ++i) original.push_back(static_cast<std::uint8_t>(i));
    const Bytes copy = original;
    const auto* storage = original.data();
    auto msg = Message::data(ChannelId{3}, std::move(original));
    EXPECT_EQ(msg.payload, copy);
    EXPECT_EQ(msg.payload.data(), storage);  // moved, not copied
    EXPECT_EQ(msg.kind, MessageKind::data);
    EXPECT_EQ(msg.channel_id, ChannelId{3});
}

TEST(MessageTest, NotificationsCarryNoPayload) {
    auto c = Message::connected(ChannelId{4}, Endpoint{"10.0.0.1", 5000});
    EXPECT_TRUE(c.payload.empty());
    EXPECT_EQ(c.kind, MessageKind::connected);
    ASSERT_TRUE(c.remote.has_value());
    EXPECT_TRUE(Message::disconnected(ChannelId{4}).payload.empty());
    auto e = Message::error(ChannelId{4}, Status::socket_error);
    EXPECT_EQ(e.status, Status::socket_error);
    EXPECT_EQ(kind_name(MessageKind::disconnected), "DISCONNECTED");
}

TEST(ChannelInfoTest, OptionParsing) {
    ChannelInfo info{"tcp-client", {"h", 1}, {{"queue_capacity", "12"}, {"nodelay", "off"},
                                              {"idle_timeout", "1.5"}, {"bad", "x1"}}};
    EXPECT_EQ(*option_uint(info, option::queue_capacity, 5), 12u);
    EXPECT_EQ(*option_uint(info, "absent", 5), 5u);
    EXPECT_EQ(option_uint(info, "bad", 5).status(), Status::bad_info);
    EXPECT_EQ(option_uint(info, option::queue_capacity, 5, 20).status(), Status::bad_info);
    EXPECT_FALSE(*option_bool(info, option::nodelay, true));
    EXPECT_EQ(option_seconds(info, option::idle_timeout, {}).value(), std::chrono::milliseconds(1500));
    EXPECT_TRUE(channel_type::is_server("udp-server"));
    EXPECT_FALSE(channel_type::is_server("udp-client"));
}
