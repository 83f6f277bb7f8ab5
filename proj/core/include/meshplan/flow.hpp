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

#ifndef MESHPLAN_FLOW_HPP
#define MESHPLAN_FLOW_HPP

#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "meshplan/solution.hpp"

namespace meshplan {

class PlanningContext;
struct PlanningInstance;

inline constexpr int kUnreachable = -1;

// Hop counts over the undirected graph of established links.
class HopMatrix {
 public:
  HopMatrix() = default;
  explicit HopMatrix(int sites) : sites_(sites), hops_(static_cast<std::size_t>(sites) * sites, kUnreachable) {}

  int site_count() const noexcept { return sites_; }
  // kUnreachable when no path exists.
  int operator()(int from, int to) const { return hops_[static_cast<std::size_t>(from) * sites_ + to]; }
  int& operator()(int from, int to) { return hops_[static_cast<std::size_t>(from) * sites_ + to]; }

 private:
  int sites_ = 0;
  std::vector<int> hops_;
};

HopMatrix hop_distances(const Solution& solution);

struct RoutingTrace {
  int source_site = 0;
  int gateway_site = 0;
  std::vector<int> path;      // source ... gateway
  std::vector<int> channels;  // channel of each hop; size path.size() - 1
  double demand = 0.0;
  bool operator==(const RoutingTrace&) const = default;
};

struct RoutingOptions {
  // Candidate paths tried per gateway before moving to the next one.
  int max_paths_per_gateway = 8;
};

// Routes each site's aggregated demand, unsplit, to the nearest gateway that
// can take it within capacity and the hop bound, and fills f and F. Any
// previous flows are discarded. Throws RoutingInfeasible naming the first
// stranded site.
std::vector<RoutingTrace> route_flows(Solution& solution, const PlanningContext& context,
                                      const RoutingOptions& options = {});

// sum_i T_i x_ij + sum_l sum_k (f_jlk + f_ljk) - F_j. Diagnostic only.
double literal_flow_balance(const Solution& solution, const PlanningInstance& instance, int site);
// sum_i T_i x_ij + inflow(j) - outflow(j) - F_j; zero on a balanced plan.
double canonical_flow_residual(const Solution& solution, const PlanningInstance& instance, int site);

// (site, F) for every gateway-flagged site, in site order.
std::vector<std::pair<int, double>> gateway_throughputs(const Solution& solution);

nlohmann::json traces_to_json(const std::vector<RoutingTrace>& traces);

}  // namespace meshplan

#endif  // MESHPLAN_FLOW_HPP
