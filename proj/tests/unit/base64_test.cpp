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

#include "base64_reference.hpp"
#include "xchannel/base64.hpp"

using namespace xchannel;
using xchannel::testing::reference_base64;

TEST(Base64Test, Rfc4648Vectors) {
    const std::pair<const char*, const char*> vectors[] = {
        {"", ""},         {"f", "Zg=="},         {"fo", "Zm8="},        {"foo", "Zm9v"},
        {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="}, {"foobar", "Zm9vYmFy"},
    };
    for (auto [plain, encoded] : vectors) {
        EXPECT_EQ(base64_encode(to_bytes(plain)), encoded);
        auto decoded = base64_decode(encoded);
        ASSERT_TRUE(decoded.ok()) << encoded;
        EXPECT_EQ(to_string(*decoded), plain);
    }
}

TEST(Base64Test, ReferenceOracleAgrees) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> len(0, 300);
    for (int i = 0; i < 2000; ++i) {
        Bytes input(len(rng));
        for (auto& b : input) b = static_cast<std::uint8_t>(rng());
        ASSERT_EQ(base64_encode(input), reference_base64(input));
        auto back = base64_decode(base64_encode(input));
        ASSERT_TRUE(back.ok());
        ASSERT_EQ(*back, input);
    }
}

TEST(Base64Test, WhitespaceBetweenGroupsIsTolerated) {
    auto decoded = base64_decode("  Zm9v\r\n YmFy\n");
    ASSERT_TRUE(decoded.ok());
    EXPECT_EQ(to_string(*decoded), "foobar");
}

TEST(Base64Test, RejectsIllegalInput) {
    for (const char* bad : {"Z!==", "Zg=", "Zg", "Z===", "=Zg=", "Zg==Zg==", "Zm9v=", "Zh==",
                            "Zm9=v", "Zm-v"}) {
        EXPECT_EQ(base64_decode(bad).status(), Status::protocol_error) << bad;
    }
}
