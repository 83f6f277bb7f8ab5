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

#include <benchmark/benchmark.h>

#include "meshplan/meshplan.hpp"

namespace {

using namespace meshplan;

PlanningContext grid_context(int side) {
  GridInstanceParams p;
  p.rows = p.cols = side;
  return PlanningContext(build_grid_instance(p));
}

void BM_ConstructFeasible(benchmark::State& state) {
  const auto ctx = grid_context(static_cast<int>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Rng rng(seed++);
    benchmark::DoNotOptimize(construct_feasible(ctx, rng));
  }
}
BENCHMARK(BM_ConstructFeasible)->Arg(6)->Arg(8)->Arg(10);

void BM_CheckConstraints(benchmark::State& state) {
  const auto ctx = grid_context(static_cast<int>(state.range(0)));
  Rng rng(1);
  const auto s = construct_feasible(ctx, rng);
  for (auto _ : state) benchmark::DoNotOptimize(check_constraints(s, ctx));
}
BENCHMARK(BM_CheckConstraints)->Arg(6)->Arg(10);

void BM_RouteFlows(benchmark::State& state) {
  const auto ctx = grid_context(static_cast<int>(state.range(0)));
  Rng rng(1);
  auto s = construct_feasible(ctx, rng);
  for (auto _ : state) benchmark::DoNotOptimize(route_flows(s, ctx));
}
BENCHMARK(BM_RouteFlows)->Arg(6)->Arg(10);

void BM_Mutate(benchmark::State& state) {
  const auto ctx = grid_context(6);
  Rng build(1);
  Particle p;
  p.current = construct_feasible(ctx, build);
  p.raw = evaluate_raw(p.current, ctx);
  p.objectives = orient(p.raw, ModelVariant::Lglb);
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(mutate(p, 0.1, rng, ctx));
}
BENCHMARK(BM_Mutate);

void BM_CrowdingDistance(benchmark::State& state) {
  Rng rng(3);
  std::vector<ObjectiveVector> points;
  for (int i = 0; i < state.range(0); ++i) {
    points.push_back({rng.uniform_real(), rng.uniform_real(), rng.uniform_real(), rng.uniform_real()});
  }
  for (auto _ : state) benchmark::DoNotOptimize(crowding_distance(points));
}
BENCHMARK(BM_CrowdingDistance)->Arg(20)->Arg(100);

void BM_RunSmall(benchmark::State& state) {
  const auto ctx = grid_context(6);
  MopsoConfig config;
  config.swarm_size = 10;
  config.generations = 10;
  for (auto _ : state) benchmark::DoNotOptimize(run(ctx, config));
}
BENCHMARK(BM_RunSmall)->Unit(benchmark::kMillisecond);

void BM_ToyOracle(benchmark::State& state) {
  GridInstanceParams p;
  p.rows = p.cols = 2;
  p.demand_points = 8;
  p.radios = 2;
  p.channels = 3;
  p.interface_capacity = 4.0;
  const PlanningContext ctx(build_grid_instance(p));
  for (auto _ : state) benchmark::DoNotOptimize(true_pareto_front(ctx, ModelVariant::Lglb));
}
BENCHMARK(BM_ToyOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
