// Copyright 2026 The meshplan Authors
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
#include <nlohmann/json.hpp>

#include "unit/test_support.hpp"

namespace meshplan {
namespace {

TEST(Solution, RolesAndCounts) {
  Solution s(4, 2, 3);
  s.install_access_point(0);
  s.install_relay(1);
  s.install_relay(0);
  EXPECT_EQ(s.access_point_count(), 0);
  EXPECT_EQ(s.relay_count(), 2);
  s.install_access_point(0);
  s.gateway[1] = 1;
  s.assignment(1, 0) = 1;
  EXPECT_EQ(s.installed_count(), 2);
  EXPECT_EQ(s.gateway_count(), 1);
  EXPECT_EQ(s.hosts(), (std::vector<int>{-1, 0}));
  s.uninstall(0);
  EXPECT_EQ(s.hosts(), (std::vector<int>{-1, -1}));
  s.uninstall(1);
  EXPECT_EQ(s.gateway_count(), 0);
  EXPECT_EQ(s.installed_count(), 0);
}

TEST(Solution, LinksStaySortedWithoutDuplicates) {
  Solution s(4, 0, 3);
  s.add_link(2, 3, 1);
  s.add_link(0, 1, 2);
  s.add_link(2, 3, 1);
  ASSERT_EQ(s.links.size(), 2u);
  EXPECT_EQ(s.links[0], (Link{0, 1, 2}));
  EXPECT_TRUE(s.has_link(2, 3, 1));
  EXPECT_FALSE(s.has_link(3, 2, 1));
  EXPECT_EQ(s.channel_active(3, 1), 1);
  s.clear_radio_layer();
  EXPECT_TRUE(s.links.empty());
  EXPECT_EQ(s.channel_active.count_ones(), 0u);
}

TEST(Solution, JsonRoundTrip) {
  const PlanningContext ctx(testing::standard_instance(4));
  Rng rng(4);
  const auto s = construct_feasible(ctx, rng);
  const auto doc = solution_to_json(s);
  EXPECT_EQ(solution_from_json(doc), s);
  EXPECT_EQ(solution_from_json(nlohmann::json::parse(doc.dump())), s);
}

TEST(Solution, MalformedJsonIsSchemaError) {
  EXPECT_THROW(solution_from_json(nlohmann::json::array()), SchemaError);
  auto doc = solution_to_json(Solution(2, 1, 3));
  doc.erase("L");
  EXPECT_THROW(solution_from_json(doc), SchemaError);
}

}  // namespace
}  // namespace meshplan
