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

#ifndef MESHPLAN_MOPSO_HPP
#define MESHPLAN_MOPSO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meshplan/archive.hpp"
#include "meshplan/objectives.hpp"
#include "meshplan/solution.hpp"

namespace meshplan {

class PlanningContext;
class Rng;

struct MopsoConfig {
  int swarm_size = 50;
  int generations = 100;       // gmax
  double mutation_rate = 0.1;  // mut
  int archive_capacity = 100;
  std::uint64_t seed = 1;
  ModelVariant variant = ModelVariant::Lglb;
  CoverageMode coverage_mode = CoverageMode::Assigned;
  int max_retries = 50;
  std::optional<int> gateway_count;  // nullopt: derived from demand
  // Recombine each particle with a crowding-selected archive leader before
  // mutating it. Off by default.
  bool recombine = false;
  int mutation_attempts = 5;
  // Worker threads for per-particle work; 0 or 1 runs serially.
  int threads = 0;

  void validate() const;  // throws ParameterError
};

struct Particle {
  Solution current;
  ObjectiveVector objectives;
  RawObjectives raw;
  Solution best;
  ObjectiveVector best_objectives;
};

struct GenerationStats {
  int generation = 0;
  std::size_t archive_size = 0;
  int min_cost = 0;
  int max_coverage = 0;
  double max_link_residual = 0.0;
  double min_gateway_balance = 0.0;
  bool operator==(const GenerationStats&) const = default;
};

struct MutationOptions {
  std::optional<int> gateway_count;
  CoverageMode coverage_mode = CoverageMode::Assigned;
  ModelVariant variant = ModelVariant::Lglb;
  int attempts = 5;
};

// Removes each AP with probability mut and moves each gateway flag with
// probability mut, then rebuilds relays, gateways, channels and flows. Falls
// back to the unchanged particle when no feasible mutant is found within
// options.attempts.
Particle mutate(const Particle& particle, double mut, Rng& rng, const PlanningContext& context,
                const MutationOptions& options = {});

// Child keeps the particle's APs where coin flips say so and takes the
// leader's APs elsewhere; unassigned demand is re-placed. Returns nullopt
// when the child cannot be completed.
std::optional<Solution> recombine(const Solution& particle, const Solution& leader, Rng& rng,
                                  const PlanningContext& context, std::optional<int> gateway_count);

struct RunResult {
  ParetoArchive archive;
  std::vector<GenerationStats> stats;  // generation 0 is the initial swarm
};

RunResult run(const PlanningContext& context, const MopsoConfig& config);

GenerationStats summarize(const ParetoArchive& archive, int generation);
std::string stats_to_csv(const std::vector<GenerationStats>& stats);

}  // namespace meshplan

#endif  // MESHPLAN_MOPSO_HPP
