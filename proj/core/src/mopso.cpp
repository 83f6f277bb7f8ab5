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

#include "meshplan/mopso.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "meshplan/constraints.hpp"
#include "meshplan/construct.hpp"
#include "meshplan/errors.hpp"
#include "meshplan/instance.hpp"
#include "meshplan/rng.hpp"

namespace meshplan {

namespace {

// Runs body(i) for i in [0, n). Results must be written to per-index slots
// so that the outcome does not depend on scheduling.
template <typename Body>
void for_each_index(int n, int threads, const Body& body) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  const int count = std::min(threads, n);
  workers.reserve(count);
  for (int t = 0; t < count; ++t) {
    workers.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

Particle make_particle(Solution solution, const PlanningContext& context, ModelVariant variant, CoverageMode mode) {
  Particle p;
  p.raw = evaluate_raw(solution, context, mode);
  p.objectives = orient(p.raw, variant);
  p.best = solution;
  p.best_objectives = p.objectives;
  p.current = std::move(solution);
  return p;
}

// Binary tournament on crowding distance; ties keep the lower index.
const ArchiveEntry& pick_leader(const ParetoArchive& archive, Rng& rng) {
  const auto a = rng.uniform_index(archive.size());
  const auto b = rng.uniform_index(archive.size());
  const auto& ea = archive[std::min(a, b)];
  const auto& eb = archive[std::max(a, b)];
  return eb.crowding_distance > ea.crowding_distance ? eb : ea;
}

}  // namespace

void MopsoConfig::validate() const {
  if (swarm_size < 1) throw ParameterError("swarm size must be at least 1");
  if (generations < 1) throw ParameterError("gmax must be at least 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw ParameterError("mutation factor must lie in [0, 1]");
  if (archive_capacity < 1) throw ParameterError("archive capacity must be at least 1");
  if (max_retries < 1) throw ParameterError("max retries must be at least 1");
  if (mutation_attempts < 1) throw ParameterError("mutation attempts must be at least 1");
  if (gateway_count && *gateway_count < 1) throw ParameterError("gateway count must be at least 1");
}

Particle mutate(const Particle& particle, double mut, Rng& rng, const PlanningContext& context,
                const MutationOptions& options) {
  if (!(mut >= 0.0 && mut <= 1.0)) throw ParameterError("mutation factor must lie in [0, 1]");
  const int S = context.site_count();
  std::vector<int> old_gateways;
  for (int j = 0; j < S; ++j) {
    if (particle.current.gateway[j]) old_gateways.push_back(j);
  }

  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    Solution s = particle.current;
    for (int j = 0; j < S; ++j) {
      if (s.access_point[j] && rng.bernoulli(mut)) s.uninstall(j);
    }
    // The relay layer and gateway flags are rebuilt around the surviving APs.
    for (int j = 0; j < S; ++j) {
      if (s.relay[j]) s.uninstall(j);
      s.gateway[j] = 0;
    }
    s.clear_radio_layer();

    place_access_points(s, context, rng);
    try {
      build_backbone(s, context);
    } catch (const ConstructionInfeasible&) {
      continue;
    }

    for (int g : old_gateways) {
      if (s.installed[g]) s.gateway[g] = 1;
    }
    for (int g : old_gateways) {
      if (!s.gateway[g] || !rng.bernoulli(mut)) continue;
      std::vector<int> pool;
      for (int j = 0; j < S; ++j) {
        if (s.installed[j] && !s.gateway[j]) pool.push_back(j);
      }
      if (pool.empty()) continue;
      s.gateway[g] = 0;
      s.gateway[pool[rng.uniform_index(pool.size())]] = 1;
    }

    if (finish_plan(s, context, rng, options.gateway_count)) continue;

    Particle out = particle;
    out.raw = evaluate_raw(s, context, options.coverage_mode);
    out.objectives = orient(out.raw, options.variant);
    out.current = std::move(s);
    return out;
  }
  return particle;
}

std::optional<Solution> recombine(const Solution& particle, const Solution& leader, Rng& rng,
                                  const PlanningContext& context, std::optional<int> gateway_count) {
  const auto& inst = context.instance();
  Solution child(context);
  std::vector<double> load(context.site_count(), 0.0);
  std::vector<char> taken(context.demand_count(), 0);
  for (int j = 0; j < context.site_count(); ++j) {
    const Solution& parent = rng.bernoulli(0.5) ? particle : leader;
    if (!parent.access_point[j]) continue;
    child.install_access_point(j);
    for (int i = 0; i < context.demand_count(); ++i) {
      const double t = inst.demand_points[i].traffic;
      if (parent.assignment(i, j) && !taken[i] && load[j] + t <= inst.interface_capacity + kFeasibilityTolerance) {
        child.assignment(i, j) = 1;
        taken[i] = 1;
        load[j] += t;
      }
    }
  }
  place_access_points(child, context, rng);
  try {
    build_backbone(child, context);
  } catch (const ConstructionInfeasible&) {
    return std::nullopt;
  }
  if (finish_plan(child, context, rng, gateway_count)) return std::nullopt;
  return child;
}

GenerationStats summarize(const ParetoArchive& archive, int generation) {
  GenerationStats st;
  st.generation = generation;
  st.archive_size = archive.size();
  if (archive.empty()) return st;
  st.min_cost = archive[0].raw.cost;
  st.max_coverage = archive[0].raw.coverage;
  st.max_link_residual = archive[0].raw.link_residual;
  st.min_gateway_balance = archive[0].raw.gateway_balance;
  for (const auto& e : archive.entries()) {
    st.min_cost = std::min(st.min_cost, e.raw.cost);
    st.max_coverage = std::max(st.max_coverage, e.raw.coverage);
    st.max_link_residual = std::max(st.max_link_residual, e.raw.link_residual);
    st.min_gateway_balance = std::min(st.min_gateway_balance, e.raw.gateway_balance);
  }
  return st;
}

std::string stats_to_csv(const std::vector<GenerationStats>& stats) {
  std::string out = "generation,archive_size,min_cost,max_coverage,max_link_residual,min_gateway_balance\n";
  char line[256];
  for (const auto& st : stats) {
    std::snprintf(line, sizeof line, "%d,%zu,%d,%d,%.17g,%.17g\n", st.generation, st.archive_size, st.min_cost,
                  st.max_coverage, st.max_link_residual, st.min_gateway_balance);
    out += line;
  }
  return out;
}

RunResult run(const PlanningContext& context, const MopsoConfig& config) {
  config.validate();
  const int n = config.swarm_size;
  std::vector<Particle> swarm(n);

  const ConstructOptions construct_options{config.max_retries, config.gateway_count};
  for_each_index(n, config.threads, [&](int p) {
    Rng rng = Rng::stream(config.seed, 0, static_cast<std::uint64_t>(p));
    swarm[p] = make_particle(construct_feasible(context, rng, construct_options), context, config.variant,
                             config.coverage_mode);
  });

  RunResult result{ParetoArchive(static_cast<std::size_t>(config.archive_capacity)), {}};
  auto& archive = result.archive;
  for (const auto& p : swarm) archive.update({p.current, p.objectives, p.raw, kInfiniteDistance});
  result.stats.push_back(summarize(archive, 0));

  const MutationOptions mutation_options{config.gateway_count, config.coverage_mode, config.variant,
                                         config.mutation_attempts};
  std::vector<Particle> next(n);
  // The initial swarm counts as the first of gmax generations.
  for (int g = 1; g < config.generations; ++g) {
    archive.refresh_crowding();
    archive.sort_by_crowding();

    for_each_index(n, config.threads, [&](int p) {
      Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(p));
      Particle base = swarm[p];
      if (config.recombine && !archive.empty()) {
        const auto& leader = pick_leader(archive, rng);
        if (auto child = recombine(base.current, leader.solution, rng, context, config.gateway_count)) {
          base.raw = evaluate_raw(*child, context, config.coverage_mode);
          base.objectives = orient(base.raw, config.variant);
          base.current = std::move(*child);
        }
      }
      next[p] = mutate(base, config.mutation_rate, rng, context, mutation_options);
    });

    for (int p = 0; p < n; ++p) {
      auto& particle = next[p];
      if (dominates(particle.objectives, particle.best_objectives)) {
        particle.best = particle.current;
        particle.best_objectives = particle.objectives;
      }
      archive.update({particle.current, particle.objectives, particle.raw, kInfiniteDistance});
      swarm[p] = std::move(particle);
    }
    result.stats.push_back(summarize(archive, g));
  }
  archive.refresh_crowding();
  return result;
}

}  // namespace meshplan
