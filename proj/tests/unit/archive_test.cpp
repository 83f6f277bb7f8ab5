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
#include <cmath>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "unit/test_support.hpp"

namespace meshplan {
namespace {

ArchiveEntry entry(ObjectiveVector v) {
  ArchiveEntry e;
  e.raw.cost = static_cast<int>(v[0]);
  e.raw.coverage = static_cast<int>(-v[1]);
  e.objectives = std::move(v);
  return e;
}

TEST(CrowdingDistance, SingleEntryIsInfinite) {
  const std::vector<ObjectiveVector> pts{{1.0, 2.0}};
  EXPECT_EQ(crowding_distance(pts), std::vector<double>{kInfiniteDistance});
}

TEST(CrowdingDistance, CollinearInOneObjective) {
  const std::vector<ObjectiveVector> pts{{0.0}, {10.0}, {5.0}};
  const auto cd = crowding_distance(pts);
  EXPECT_EQ(cd[0], kInfiniteDistance);
  EXPECT_EQ(cd[1], kInfiniteDistance);
  EXPECT_DOUBLE_EQ(cd[2], 1.0);
}

TEST(CrowdingDistance, IdenticalEntries) {
  const std::vector<ObjectiveVector> pts(4, ObjectiveVector{3.0, 3.0});
  const auto cd = crowding_distance(pts);
  EXPECT_EQ(cd[0], kInfiniteDistance);
  EXPECT_EQ(cd[3], kInfiniteDistance);
  EXPECT_EQ(cd[1], 0.0);
  EXPECT_EQ(cd[2], 0.0);
}

TEST(CrowdingDistance, TwoObjectiveFront) {
  const std::vector<ObjectiveVector> pts{{0, 4}, {1, 2}, {3, 1}, {4, 0}};
  const auto cd = crowding_distance(pts);
  EXPECT_DOUBLE_EQ(cd[1], 3.0 / 4.0 + 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(cd[2], 3.0 / 4.0 + 2.0 / 4.0);
}

TEST(CrowdingDistance, RemovingInteriorNeverShrinksOthers) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 4 + static_cast<int>(rng.uniform_index(10));
    const std::size_t dims = 2 + rng.uniform_index(2);
    std::vector<ObjectiveVector> pts;
    for (int i = 0; i < m; ++i) {
      std::vector<double> v(dims);
      for (auto& x : v) x = rng.uniform_real();
      if (dims == 2) v[1] = 1.0 - v[0];
      pts.emplace_back(std::move(v));
    }
    const auto before = crowding_distance(pts);
    for (int drop = 0; drop < m; ++drop) {
      if (std::isinf(before[drop])) continue;
      auto rest = pts;
      rest.erase(rest.begin() + drop);
      const auto after = crowding_distance(rest);
      for (int i = 0, k = 0; i < m; ++i) {
        if (i == drop) continue;
        EXPECT_GE(after[k], before[i] - 1e-12);
        ++k;
      }
    }
  }
}

TEST(ParetoArchive, InsertionRules) {
  ParetoArchive archive(10);
  EXPECT_TRUE(archive.update(entry({5, -5})));
  EXPECT_EQ(archive.size(), 1u);
  EXPECT_FALSE(archive.update(entry({6, -5})));
  EXPECT_FALSE(archive.update(entry({5, -5})));
  EXPECT_EQ(archive.size(), 1u);
  EXPECT_TRUE(archive.update(entry({4, -3})));
  EXPECT_TRUE(archive.update(entry({6, -8})));
  EXPECT_EQ(archive.size(), 3u);
  EXPECT_TRUE(archive.update(entry({4, -6})));
  ASSERT_EQ(archive.size(), 2u);
  EXPECT_EQ(archive.objective_vectors(), (std::vector<ObjectiveVector>{{6, -8}, {4, -6}}));
}

TEST(ParetoArchive, CapacityEvictsMostCrowded) {
  ParetoArchive archive(3);
  archive.update(entry({0, -10}));
  archive.update(entry({10, -20}));
  archive.update(entry({5, -15}));
  // The newcomer sits closest to its neighbours and is evicted at once.
  EXPECT_FALSE(archive.update(entry({6, -16})));
  ASSERT_EQ(archive.size(), 3u);
  EXPECT_EQ(archive.objective_vectors(), (std::vector<ObjectiveVector>{{0, -10}, {10, -20}, {5, -15}}));
  EXPECT_THROW(ParetoArchive(0), ParameterError);
}

TEST(ParetoArchive, EvictionTieGoesToHigherIndex) {
  ParetoArchive archive(3);
  archive.update(entry({0, -10}));
  archive.update(entry({10, -20}));
  archive.update(entry({4, -14}));
  // {4,-14} and {6,-16} tie on crowding.
  EXPECT_FALSE(archive.update(entry({6, -16})));
  EXPECT_EQ(archive.objective_vectors(), (std::vector<ObjectiveVector>{{0, -10}, {10, -20}, {4, -14}}));
}

TEST(ParetoArchive, StaysBoundedAndNonDominated) {
  ParetoArchive archive(8);
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    archive.update(entry({static_cast<double>(rng.uniform_index(30)), -static_cast<double>(rng.uniform_index(30)),
                          rng.uniform_real()}));
    ASSERT_LE(archive.size(), 8u);
  }
  for (const auto& a : archive.entries()) {
    for (const auto& b : archive.entries()) EXPECT_FALSE(dominates(a.objectives, b.objectives));
  }
}

TEST(ParetoArchive, SortByCrowding) {
  ParetoArchive archive(10);
  for (ObjectiveVector v : {ObjectiveVector{2, -2}, {0, 0}, {1, -1.9}, {4, -4}}) archive.update(entry(v));
  archive.sort_by_crowding();
  for (std::size_t i = 1; i < archive.size(); ++i) {
    EXPECT_GE(archive[i - 1].crowding_distance, archive[i].crowding_distance);
  }
}

TEST(CheapestSolution, Rules) {
  ParetoArchive archive(10);
  EXPECT_THROW(cheapest_solution(archive), ParameterError);
  archive.update(entry({9, -200}));
  EXPECT_EQ(cheapest_solution(archive).objectives, (ObjectiveVector{9, -200}));
  archive.update(entry({6, -150}));
  EXPECT_EQ(cheapest_solution(archive).objectives, (ObjectiveVector{6, -150}));

  ParetoArchive tie(10);
  tie.update(entry({6, -180, 1.0}));
  tie.update(entry({6, -200, 2.0}));
  tie.update(entry({6, -200, 0.5}));
  EXPECT_EQ(cheapest_solution(tie).objectives, (ObjectiveVector{6, -200, 0.5}));
}

TEST(ArchiveJson, CarriesObjectivesAndSolutions) {
  ParetoArchive archive(4);
  archive.update(entry({3, -1}));
  const auto doc = archive_to_json(archive, ModelVariant::Cov, CoverageMode::Assigned);
  EXPECT_EQ(doc["variant"], "cov");
  EXPECT_EQ(doc["entries"].size(), 1u);
}

}  // namespace
}  // namespace meshplan
