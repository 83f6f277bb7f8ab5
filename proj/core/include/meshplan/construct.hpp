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

#ifndef MESHPLAN_CONSTRUCT_HPP
#define MESHPLAN_CONSTRUCT_HPP

#include <optional>
#include <string>
#include <vector>

#include "meshplan/solution.hpp"

namespace meshplan {

class PlanningContext;
class Rng;

// Installs access points at random covering sites until no unassigned demand
// point can be placed, filling each AP up to C_max in increasing DP order.
// Sites already hosting an AP take further DPs while capacity remains; a
// relay picked as host is upgraded to an AP.
void place_access_points(Solution& partial, const PlanningContext& context, Rng& rng);

// Relay placement around every AP: installs grid neighbours (N, E, S, W) until
// the AP has 2/3/4 installed neighbours for a corner/edge/internal site.
void place_relays(Solution& partial, const PlanningContext& context);

// Joins the installed nodes into one backbone component and raises every
// node to at least two installed backbone neighbours by adding relays.
// Throws ConstructionInfeasible when the site graph cannot support it.
void connect_backbone(Solution& partial, const PlanningContext& context);

// max(1, ceil(assigned demand / C_max)).
int default_gateway_count(const Solution& partial, const PlanningContext& context);

// Flags count (default: default_gateway_count) distinct installed nodes as
// gateways. Existing flags on installed nodes count toward the total; any
// excess is dropped at random. Sites with demand and no gateway within A hops
// (over established links, or over installed backbone neighbours when no
// links exist yet) each get a random node within reach; the rest of the
// budget is drawn uniformly. With the default count the cover may add
// gateways beyond it; an explicit count is a hard budget. Throws
// ParameterError when count exceeds the node count and ConstructionInfeasible
// when an explicit budget cannot reach every demand site.
void select_gateways(Solution& partial, const PlanningContext& context, Rng& rng,
                     std::optional<int> count = std::nullopt);

struct ChannelizationResult {
  // Installed sites left with fewer than two established links.
  std::vector<int> deficient_sites;
  bool complete() const noexcept { return deficient_sites.empty(); }
};

// First-fit channel assignment over candidate links. Clears and rebuilds w
// and L.
ChannelizationResult assign_channels(Solution& partial, const PlanningContext& context);

struct ConstructOptions {
  int max_retries = 50;
  std::optional<int> gateway_count;
};

// Full placement pipeline with whole-pipeline retries. The result passes
// check_constraints. Throws ConstructionInfeasible after max_retries.
Solution construct_feasible(const PlanningContext& context, Rng& rng,
                            const ConstructOptions& options = {});

// place_relays followed by connect_backbone.
void build_backbone(Solution& partial, const PlanningContext& context);

// Shared tail of construction and mutation: gateway budget, channels,
// routing and the feasibility check. Returns the failure cause, or nullopt
// when the solution is feasible.
std::optional<std::string> finish_plan(Solution& partial, const PlanningContext& context, Rng& rng,
                                       std::optional<int> gateway_count);

}  // namespace meshplan

#endif  // MESHPLAN_CONSTRUCT_HPP
