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

#ifndef MESHPLAN_ORACLE_HPP
#define MESHPLAN_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "meshplan/objectives.hpp"
#include "meshplan/solution.hpp"

namespace meshplan {

class PlanningContext;

// Exhaustive enumeration is refused above these sizes.
inline constexpr int kOracleMaxSites = 6;
inline constexpr int kOracleMaxDemandPoints = 8;
inline constexpr int kOracleMaxChannels = 3;

// Throws GuardRefusal, naming the bounds, when the instance is too large.
void check_oracle_guard(const PlanningContext& context);

struct OracleOptions {
  CoverageMode coverage_mode = CoverageMode::Assigned;
  // Gateway-count policy shared with the metaheuristic. nullopt with
  // auto_gateway_count = false enumerates every gateway subset.
  std::optional<int> gateway_count;
  bool auto_gateway_count = true;
  // Restrict to plans the construction heuristic can produce: every outcome
  // of greedy access-point placement, the deterministic relay, channel and
  // routing steps, and every admissible gateway subset.
  // When false, all roles, assignments and link layouts are enumerated.
  bool construction_policy = true;
  // Full enumeration only: keep assignments in which an unassigned DP has no
  // covering site that could still host it.
  bool maximal_coverage = true;
  // Upper bound on evaluated candidates; exceeding it throws GuardRefusal.
  std::size_t max_candidates = 20'000'000;
  // Non-zero: visit role assignments in a shuffled order.
  std::uint64_t shuffle_seed = 0;
};

using FeasibleVisitor = std::function<void(const Solution&, const ObjectiveVector&)>;

// Visits every feasible solution of a tiny instance. Returns the number of
// candidates evaluated. Throws GuardRefusal outside the size guard.
std::size_t enumerate_feasible(const PlanningContext& context, ModelVariant variant,
                               const OracleOptions& options, const FeasibleVisitor& visit);

// Non-dominated, deduplicated, lexicographically sorted.
std::vector<ObjectiveVector> pareto_filter(std::vector<ObjectiveVector> points);

std::vector<ObjectiveVector> true_pareto_front(const PlanningContext& context, ModelVariant variant,
                                               const OracleOptions& options = {});

struct Front {
  ModelVariant variant = ModelVariant::Lglb;
  std::vector<ObjectiveVector> points;
};

struct ArchiveVerification {
  double on_front_fraction = 1.0;
  double front_coverage_fraction = 0.0;
  std::vector<ObjectiveVector> violations;
};

// Throws ParameterError when the variants differ.
ArchiveVerification verify_archive(const Front& archive, const Front& truth);

// Fixture: {"instance_hash", "variant", "coverage_mode", "front": [[...], ...]}.
nlohmann::json front_to_json(const Front& front, std::uint64_t instance_hash, CoverageMode mode);
Front front_from_json(const nlohmann::json& document, std::uint64_t* instance_hash = nullptr);

}  // namespace meshplan

#endif  // MESHPLAN_ORACLE_HPP
