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

#include <algorithm>
#include <fstream>
#include <set>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "unit/test_support.hpp"

namespace meshplan {
namespace {

PlanningContext one_dp_square() { return PlanningContext(testing::hand_instance(2, 2, {{0.3, 0.4}})); }

std::size_t count_feasible(const PlanningContext& ctx, const OracleOptions& options) {
  std::size_t visited = 0;
  enumerate_feasible(ctx, ModelVariant::Lglb, options, [&](const Solution&, const ObjectiveVector&) { ++visited; });
  return visited;
}

TEST(Oracle, SingleSiteNoDemand) {
  auto inst = testing::hand_instance(1, 1, {});
  const PlanningContext ctx(inst);
  for (bool policy : {true, false}) {
    OracleOptions options;
    options.construction_policy = policy;
    std::vector<Solution> seen;
    enumerate_feasible(ctx, ModelVariant::Lglb, options,
                       [&](const Solution& s, const ObjectiveVector&) { seen.push_back(s); });
    ASSERT_EQ(seen.size(), 1u) << policy;
    EXPECT_EQ(seen[0].installed_count(), 0);
    EXPECT_EQ(true_pareto_front(ctx, ModelVariant::Lglb, options),
              (std::vector<ObjectiveVector>{{0, 0, 0, 0}}));
  }
}

TEST(Oracle, SquareWithOneDemandPoint) {
  const auto ctx = one_dp_square();
  // Four AP sites, the full square as backbone, four single-gateway choices.
  OracleOptions policy;
  EXPECT_EQ(count_feasible(ctx, policy), 16u);
  OracleOptions full;
  full.construction_policy = false;
  EXPECT_EQ(count_feasible(ctx, full), 3552u);
}

TEST(Oracle, RefusesOversizedInstances) {
  const PlanningContext seven(testing::hand_instance(1, 7, {{0.0, 0.0}}));
  try {
    check_oracle_guard(seven);
    FAIL() << "expected refusal";
  } catch (const GuardRefusal& e) {
    EXPECT_NE(std::string(e.what()).find("6"), std::string::npos);
  }
  EXPECT_THROW(true_pareto_front(seven, ModelVariant::Cov), GuardRefusal);
  std::vector<Point> nine(9, Point{0.0, 0.0});
  EXPECT_THROW(check_oracle_guard(PlanningContext(testing::hand_instance(2, 2, nine))), GuardRefusal);
  EXPECT_THROW(check_oracle_guard(PlanningContext(testing::hand_instance(2, 2, {}, 2.0, 2, 4))), GuardRefusal);
  OracleOptions tight;
  tight.max_candidates = 1;
  EXPECT_THROW(count_feasible(one_dp_square(), tight), GuardRefusal);
}

TEST(Oracle, EverySolutionPassesChecker) {
  const auto ctx = one_dp_square();
  for (bool policy : {true, false}) {
    OracleOptions options;
    options.construction_policy = policy;
    options.auto_gateway_count = false;
    std::size_t visited = 0;
    enumerate_feasible(ctx, ModelVariant::Lglb, options, [&](const Solution& s, const ObjectiveVector& v) {
      ++visited;
      EXPECT_TRUE(check_constraints(s, ctx).feasible());
      EXPECT_TRUE(testing::flows_conserved(s, ctx.instance()));
      EXPECT_EQ(v, evaluate(s, ctx, ModelVariant::Lglb));
    });
    EXPECT_GT(visited, 0u) << policy;
  }
}

TEST(Oracle, FrontIsNonDominatedSortedAndUnique) {
  const PlanningContext ctx(testing::toy_instance());
  const auto front = true_pareto_front(ctx, ModelVariant::Lglb);
  ASSERT_FALSE(front.empty());
  EXPECT_TRUE(std::is_sorted(front.begin(), front.end()));
  EXPECT_EQ(std::set<ObjectiveVector>(front.begin(), front.end()).size(), front.size());
  for (const auto& a : front) {
    for (const auto& b : front) EXPECT_FALSE(dominates(a, b));
  }
}

TEST(Oracle, ShuffledOrderGivesSameFront) {
  const PlanningContext ctx(testing::toy_instance());
  for (bool policy : {true, false}) {
    OracleOptions options;
    options.construction_policy = policy;
    if (!policy) {
      options.gateway_count = 1;
      options.auto_gateway_count = false;
    }
    const auto base = true_pareto_front(ctx, ModelVariant::Lglb, options);
    for (std::uint64_t seed : {3u, 99u}) {
      options.shuffle_seed = seed;
      EXPECT_EQ(true_pareto_front(ctx, ModelVariant::Lglb, options), base) << policy << " " << seed;
    }
  }
}

TEST(Oracle, ToyFixtureRegression) {
  const auto inst = testing::toy_instance();
  const PlanningContext ctx(inst);
  std::ifstream in(testing::fixture_path("toy_front_lglb.json"));
  std::uint64_t hash = 0;
  const auto stored = front_from_json(nlohmann::json::parse(in), &hash);
  EXPECT_EQ(hash, instance_hash(inst));
  EXPECT_EQ(stored.variant, ModelVariant::Lglb);
  const auto front = true_pareto_front(ctx, ModelVariant::Lglb);
  ASSERT_EQ(front.size(), stored.points.size());
  for (std::size_t i = 0; i < front.size(); ++i) {
    ASSERT_EQ(front[i].size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(front[i][k], stored.points[i][k], 1e-9);
  }
}

TEST(ParetoFilter, Examples) {
  EXPECT_EQ(pareto_filter({{1, 2}}), (std::vector<ObjectiveVector>{{1, 2}}));
  EXPECT_EQ(pareto_filter({{2, 1}, {1, 2}}), (std::vector<ObjectiveVector>{{1, 2}, {2, 1}}));
  EXPECT_EQ(pareto_filter({{2, 2}, {1, 2}, {1, 2}, {3, 0}}), (std::vector<ObjectiveVector>{{1, 2}, {3, 0}}));
  EXPECT_TRUE(pareto_filter({}).empty());
}

TEST(VerifyArchive, Examples) {
  const Front truth{ModelVariant::Cov, {{1, -3}, {2, -5}}};
  auto same = verify_archive(truth, truth);
  EXPECT_EQ(same.on_front_fraction, 1.0);
  EXPECT_EQ(same.front_coverage_fraction, 1.0);
  EXPECT_TRUE(same.violations.empty());

  const auto empty = verify_archive(Front{ModelVariant::Cov, {}}, truth);
  EXPECT_EQ(empty.on_front_fraction, 1.0);
  EXPECT_EQ(empty.front_coverage_fraction, 0.0);
  EXPECT_TRUE(empty.violations.empty());

  const auto partial = verify_archive(Front{ModelVariant::Cov, {{1, -3}, {3, -5}}}, truth);
  EXPECT_EQ(partial.on_front_fraction, 0.5);
  EXPECT_EQ(partial.front_coverage_fraction, 0.5);
  EXPECT_EQ(partial.violations, (std::vector<ObjectiveVector>{{3, -5}}));

  EXPECT_THROW(verify_archive(Front{ModelVariant::Lglb, {}}, truth), ParameterError);
}

TEST(FrontJson, RoundTripAndErrors) {
  const Front front{ModelVariant::Glb, {{1, -2, 0.5}, {2, -3, 1.25}}};
  const auto doc = front_to_json(front, 0xabcdefULL, CoverageMode::Assigned);
  std::uint64_t hash = 0;
  const auto back = front_from_json(nlohmann::json::parse(doc.dump()), &hash);
  EXPECT_EQ(hash, 0xabcdefULL);
  EXPECT_EQ(back.variant, ModelVariant::Glb);
  EXPECT_EQ(back.points, front.points);
  auto broken = doc;
  broken["front"] = "nope";
  EXPECT_THROW(front_from_json(broken), SchemaError);
  broken = doc;
  broken.erase("variant");
  EXPECT_THROW(front_from_json(broken), SchemaError);
}

}  // namespace
}  // namespace meshplan
