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

PlanningInstance small_instance(std::uint64_t seed = 1) {
  GridInstanceParams p;
  p.rows = p.cols = 4;
  p.demand_points = 40;
  p.seed = seed;
  return build_grid_instance(p);
}

MopsoConfig small_config(std::uint64_t seed = 1) {
  MopsoConfig c;
  c.swarm_size = 8;
  c.generations = 10;
  c.seed = seed;
  return c;
}

Particle particle_for(const PlanningContext& ctx, std::uint64_t seed) {
  Rng rng(seed);
  Particle p;
  p.current = construct_feasible(ctx, rng);
  p.raw = evaluate_raw(p.current, ctx);
  p.objectives = orient(p.raw, ModelVariant::Lglb);
  p.best = p.current;
  p.best_objectives = p.objectives;
  return p;
}

TEST(MopsoConfig, Validation) {
  MopsoConfig c;
  EXPECT_NO_THROW(c.validate());
  c.mutation_rate = 1.5;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.swarm_size = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.generations = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.archive_capacity = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.gateway_count = 0;
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST(Mutate, ZeroRateKeepsStructure) {
  const PlanningContext ctx(testing::standard_instance(2));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto p = particle_for(ctx, seed);
    Rng rng(seed + 100);
    const auto m = mutate(p, 0.0, rng, ctx);
    EXPECT_EQ(m.current.access_point, p.current.access_point);
    EXPECT_EQ(m.current.relay, p.current.relay);
    EXPECT_EQ(m.current.assignment, p.current.assignment);
    EXPECT_EQ(m.current.links, p.current.links);
    EXPECT_TRUE(check_constraints(m.current, ctx).feasible());
  }
}

TEST(Mutate, FullRateStaysFeasible) {
  const PlanningContext ctx(testing::standard_instance(3));
  auto p = particle_for(ctx, 3);
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    p = mutate(p, 1.0, rng, ctx);
    ASSERT_TRUE(check_constraints(p.current, ctx).feasible()) << i;
    EXPECT_TRUE(testing::flows_conserved(p.current, ctx.instance()));
    EXPECT_EQ(p.objectives, evaluate(p.current, ctx, ModelVariant::Lglb));
  }
}

TEST(Mutate, SeededCallIsDeterministic) {
  const PlanningContext ctx(testing::standard_instance(4));
  const auto p = particle_for(ctx, 4);
  Rng a(9), b(9);
  const auto x = mutate(p, 0.3, a, ctx);
  const auto y = mutate(p, 0.3, b, ctx);
  EXPECT_EQ(x.current, y.current);
  EXPECT_EQ(x.objectives, y.objectives);
  EXPECT_THROW(mutate(p, -0.1, a, ctx), ParameterError);
}

TEST(Mutate, KeepsExplicitGatewayBudget) {
  const PlanningContext ctx(testing::standard_instance(5));
  Rng build(5);
  ConstructOptions co;
  co.gateway_count = 10;
  Particle p;
  p.current = construct_feasible(ctx, build, co);
  p.raw = evaluate_raw(p.current, ctx);
  p.objectives = orient(p.raw, ModelVariant::Lglb);
  MutationOptions mo;
  mo.gateway_count = 10;
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    p = mutate(p, 0.5, rng, ctx, mo);
    EXPECT_EQ(p.current.gateway_count(), 10);
  }
}

TEST(Recombine, ChildIsFeasible) {
  const PlanningContext ctx(testing::standard_instance(6));
  const auto a = particle_for(ctx, 1).current;
  const auto b = particle_for(ctx, 2).current;
  int built = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    if (auto child = recombine(a, b, rng, ctx, std::nullopt)) {
      ++built;
      EXPECT_TRUE(check_constraints(*child, ctx).feasible());
      EXPECT_EQ(evaluate_coverage(*child, ctx), 200);
    }
  }
  EXPECT_GT(built, 0);
}

TEST(Run, SingleParticleSingleGeneration) {
  const PlanningContext ctx(small_instance());
  auto c = small_config();
  c.swarm_size = 1;
  c.generations = 1;
  const auto result = run(ctx, c);
  ASSERT_EQ(result.archive.size(), 1u);
  ASSERT_EQ(result.stats.size(), 1u);
  Rng rng = Rng::stream(c.seed, 0, 0);
  const auto s = construct_feasible(ctx, rng);
  EXPECT_EQ(result.archive[0].solution, s);
  EXPECT_EQ(result.archive[0].objectives, evaluate(s, ctx, ModelVariant::Lglb));
}

TEST(Run, ArchiveIsSoundAndBounded) {
  const PlanningContext ctx(small_instance(2));
  auto c = small_config(2);
  c.archive_capacity = 5;
  c.generations = 15;
  const auto result = run(ctx, c);
  EXPECT_LE(result.archive.size(), 5u);
  for (const auto& a : result.archive.entries()) {
    EXPECT_TRUE(check_constraints(a.solution, ctx).feasible());
    EXPECT_TRUE(testing::flows_conserved(a.solution, ctx.instance()));
    EXPECT_EQ(a.objectives, evaluate(a.solution, ctx, c.variant));
    for (const auto& b : result.archive.entries()) EXPECT_FALSE(dominates(a.objectives, b.objectives));
  }
}

TEST(Run, DeterministicAcrossRunsAndThreads) {
  const PlanningContext ctx(small_instance(3));
  auto c = small_config(3);
  const auto first = run(ctx, c);
  const auto second = run(ctx, c);
  EXPECT_EQ(first.archive, second.archive);
  EXPECT_EQ(first.stats, second.stats);
  c.threads = 3;
  const auto parallel = run(ctx, c);
  EXPECT_EQ(parallel.archive, first.archive);
  EXPECT_EQ(parallel.stats, first.stats);
  c.threads = 0;
  c.seed = 4;
  EXPECT_NE(run(ctx, c).stats, first.stats);
}

TEST(Run, RecombineModeIsSoundAndDeterministic) {
  const PlanningContext ctx(small_instance(4));
  auto c = small_config(4);
  c.recombine = true;
  const auto a = run(ctx, c);
  EXPECT_EQ(run(ctx, c).archive, a.archive);
  for (const auto& e : a.archive.entries()) EXPECT_TRUE(check_constraints(e.solution, ctx).feasible());
}

TEST(Run, MinimumCostNeverIncreases) {
  const PlanningContext ctx(small_instance(5));
  for (auto variant : {ModelVariant::Cov, ModelVariant::Lglb}) {
    auto c = small_config(5);
    c.variant = variant;
    c.generations = 20;
    const auto result = run(ctx, c);
    ASSERT_EQ(result.stats.size(), 20u);
    for (std::size_t g = 1; g < result.stats.size(); ++g) {
      EXPECT_EQ(result.stats[g].generation, static_cast<int>(g));
      EXPECT_LE(result.stats[g].min_cost, result.stats[g - 1].min_cost);
    }
    for (const auto& e : result.archive.entries()) EXPECT_EQ(e.objectives.size(), objective_count(variant));
  }
}

TEST(Stats, CsvLayout) {
  const std::vector<GenerationStats> stats{{0, 3, 20, 40, 12.5, 2.0}};
  EXPECT_EQ(stats_to_csv(stats),
            "generation,archive_size,min_cost,max_coverage,max_link_residual,min_gateway_balance\n"
            "0,3,20,40,12.5,2\n");
}

TEST(Stats, SummarizeArchive) {
  ParetoArchive archive(10);
  ArchiveEntry a;
  a.raw = {10, 30, 5.0, 3.0};
  a.objectives = orient(a.raw, ModelVariant::Lglb);
  ArchiveEntry b;
  b.raw = {12, 40, 2.0, 2.5};
  b.objectives = orient(b.raw, ModelVariant::Lglb);
  archive.update(a);
  archive.update(b);
  const auto st = summarize(archive, 7);
  EXPECT_EQ(st, (GenerationStats{7, 2, 10, 40, 5.0, 2.5}));
}

}  // namespace
}  // namespace meshplan
