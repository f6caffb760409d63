// Copyright 2026 The bbrecog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <string>

#include "bbrecog/instance.hpp"
#include "gtest/gtest.h"

namespace bbrecog {
namespace {

using Json = nlohmann::ordered_json;

TEST(InstanceTest, RoundTrip) {
  for (Flavor flavor : {Flavor::kSl2, Flavor::kPsl2, Flavor::kPgl2}) {
    for (ExponentMode mode : {ExponentMode::kExact, ExponentMode::kMultiple}) {
      const InstanceConfig c{1009, flavor, 42, mode};
      const InstanceConfig back = InstanceFromJson(InstanceToJson(c));
      EXPECT_EQ(back.q, c.q);
      EXPECT_EQ(back.flavor, c.flavor);
      EXPECT_EQ(back.seed, c.seed);
      EXPECT_EQ(back.mode, c.mode);
    }
  }
}

TEST(InstanceTest, DeterministicText) {
  const InstanceConfig c{7, Flavor::kSl2, 1, ExponentMode::kExact};
  EXPECT_EQ(DumpJson(InstanceToJson(c)), DumpJson(InstanceToJson(c)));
  const Json j = InstanceToJson(c);
  EXPECT_EQ(j["schema"], kInstanceSchema);
  EXPECT_EQ(j["group"]["handle_width"], 16);
  EXPECT_EQ(j["field"]["handle_width"], 8);
  EXPECT_EQ(j["group"]["identity"].get<std::string>().size(), 32u);
}

TEST(InstanceTest, FieldOrderIsSealed) {
  const Json j = InstanceToJson({1009, Flavor::kSl2, 5, ExponentMode::kExact});
  const std::string text = j.dump();
  EXPECT_EQ(text.find("1009"), std::string::npos);
  EXPECT_EQ(j["whitebox"]["q_sealed"].get<std::string>().size(), 16u);
}

TEST(InstanceTest, DetectsTampering) {
  const Json good =
      InstanceToJson({1009, Flavor::kSl2, 5, ExponentMode::kExact});
  auto expect_malformed = [](const Json& j) {
    try {
      InstanceFromJson(j);
      ADD_FAILURE() << "accepted " << j.dump();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedInput);
    }
  };
  Json j = good;
  j["group"]["identity"] = std::string(32, '0');
  expect_malformed(j);
  j = good;
  j["seed"] = 6;
  expect_malformed(j);
  j = good;
  j["schema"] = "other/1";
  expect_malformed(j);
  j = good;
  j.erase("whitebox");
  expect_malformed(j);
  j = good;
  j["whitebox"]["flavor"] = "gl2";
  expect_malformed(j);
}

TEST(InstanceTest, RejectsInvalidFieldOrders) {
  for (std::uint64_t q : {4ULL, 5ULL, 15ULL}) {
    try {
      InstanceToJson({q, Flavor::kSl2, 1, ExponentMode::kExact});
      ADD_FAILURE() << "accepted q = " << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfig);
    }
  }
}

TEST(InstanceTest, ExponentModes) {
  EXPECT_EQ(ParseExponentMode("exact"), ExponentMode::kExact);
  EXPECT_EQ(ParseExponentMode("multiple"), ExponentMode::kMultiple);
  EXPECT_THROW(ParseExponentMode("loose"), Error);
}

TEST(InstanceTest, MissingFileIsAnIoError) {
  try {
    ReadInstanceFile("/nonexistent/instance.json");
    ADD_FAILURE() << "read a missing file";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace bbrecog
