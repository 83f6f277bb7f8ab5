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

#include "meshplan/construct.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "meshplan/constraints.hpp"
#include "meshplan/errors.hpp"
#include "meshplan/flow.hpp"
#include "meshplan/instance.hpp"
#include "meshplan/rng.hpp"

namespace meshplan {

namespace {

int relay_target(SiteClass site_class) {
  switch (site_class) {
    case SiteClass::Corner: return 2;
    case SiteClass::Edge: return 3;
    case SiteClass::Internal: return 4;
  }
  return 0;
}

int installed_backbone_degree(const Solution& s, const PlanningContext& context, int site) {
  int degree = 0;
  for (int v : context.backbone_neighbors(site)) degree += s.installed[v] != 0;
  return degree;
}

// Component label per installed site (-1 elsewhere), numbered in order of
// each component's smallest site index.
std::vector<int> label_components(const Solution& s, const PlanningContext& context, int& count) {
  std::vector<int> label(s.site_count(), -1);
  count = 0;
  for (int root = 0; root < s.site_count(); ++root) {
    if (!s.installed[root] || label[root] != -1) continue;
    std::deque<int> queue{root};
    label[root] = count;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : context.backbone_neighbors(u)) {
        if (s.installed[v] && label[v] == -1) {
          label[v] = count;
          queue.push_back(v);
        }
      }
    }
    ++count;
  }
  return label;
}

// Installs relays along a shortest chain of empty sites from component 0 to
// the nearest other installed node.
void join_first_component(Solution& s, const PlanningContext& context, const std::vector<int>& label) {
  const int S = s.site_count();
  std::vector<int> parent(S, -1);
  std::vector<char> seen(S, 0);
  std::deque<int> queue;
  for (int j = 0; j < S; ++j) {
    if (label[j] == 0) {
      seen[j] = 1;
      queue.push_back(j);
    }
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : context.backbone_neighbors(u)) {
      if (seen[v]) continue;
      if (s.installed[v]) {
        for (int w = u; label[w] != 0; w = parent[w]) s.install_relay(w);
        return;
      }
      seen[v] = 1;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  throw ConstructionInfeasible("installed nodes cannot be joined into one backbone");
}

}  // namespace

void place_access_points(Solution& s, const PlanningContext& context, Rng& rng) {
  const auto& inst = context.instance();
  const double cap = inst.interface_capacity;
  auto hosts = s.hosts();
  auto load = s.site_demand(inst);

  auto fits = [&](int i, int j) { return load[j] + inst.demand_points[i].traffic <= cap + kFeasibilityTolerance; };

  std::vector<int> candidates;
  for (;;) {
    candidates.clear();
    for (int j = 0; j < s.site_count(); ++j) {
      for (int i : context.covered_demand_points(j)) {
        if (hosts[i] == -1 && fits(i, j)) {
          candidates.push_back(j);
          break;
        }
      }
    }
    if (candidates.empty()) return;
    const int site = candidates[rng.uniform_index(candidates.size())];
    if (!s.access_point[site]) s.install_access_point(site);
    for (int i : context.covered_demand_points(site)) {
      if (hosts[i] == -1 && fits(i, site)) {
        s.assignment(i, site) = 1;
        hosts[i] = site;
        load[site] += inst.demand_points[i].traffic;
      }
    }
  }
}

void place_relays(Solution& s, const PlanningContext& context) {
  std::vector<int> aps;
  for (int j = 0; j < s.site_count(); ++j) {
    if (s.access_point[j]) aps.push_back(j);
  }
  for (int ap : aps) {
    const auto neighbors = context.grid_neighbors(ap);
    const int target = std::min(static_cast<int>(neighbors.size()), relay_target(context.site_class(ap)));
    int present = 0;
    for (int v : neighbors) present += s.installed[v] != 0;
    for (int v : neighbors) {
      if (present >= target) break;
      if (!s.installed[v]) {
        s.install_relay(v);
        ++present;
      }
    }
  }
}

void connect_backbone(Solution& s, const PlanningContext& context) {
  if (s.installed_count() == 0) return;
  for (;;) {
    int components = 0;
    const auto label = label_components(s, context, components);
    if (components > 1) {
      join_first_component(s, context, label);
      continue;
    }
    int weak = -1;
    for (int j = 0; j < s.site_count() && weak == -1; ++j) {
      if (s.installed[j] && installed_backbone_degree(s, context, j) < 2) weak = j;
    }
    if (weak == -1) return;
    int pick = -1;
    int pick_degree = -1;
    for (int v : context.backbone_neighbors(weak)) {
      if (s.installed[v]) continue;
      const int degree = installed_backbone_degree(s, context, v);
      if (degree > pick_degree) {
        pick = v;
        pick_degree = degree;
      }
    }
    if (pick == -1) {
      throw ConstructionInfeasible("site " + std::to_string(weak) + " has fewer than two candidate neighbours");
    }
    s.install_relay(pick);
  }
}

void build_backbone(Solution& s, const PlanningContext& context) {
  place_relays(s, context);
  connect_backbone(s, context);
}

int default_gateway_count(const Solution& s, const PlanningContext& context) {
  const auto& inst = context.instance();
  const double demand = s.assigned_demand(inst);
  const int needed = static_cast<int>(std::ceil(demand / inst.interface_capacity - 1e-12));
  return std::max(1, needed);
}

namespace {

// Adjacency used for hop counting: established links when there are any,
// otherwise backbone connectivity among installed sites.
std::vector<std::vector<int>> hop_graph(const Solution& s, const PlanningContext& context) {
  std::vector<std::vector<int>> adj(s.site_count());
  if (!s.links.empty()) {
    for (const auto& l : s.links) {
      adj[l.from].push_back(l.to);
      adj[l.to].push_back(l.from);
    }
  } else {
    for (int j = 0; j < s.site_count(); ++j) {
      if (!s.installed[j]) continue;
      for (int l : context.backbone_neighbors(j)) {
        if (s.installed[l]) adj[j].push_back(l);
      }
    }
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

// Lowers dist[] to the hop count from any of sources, exploring at most
// depth hops.
void relax_within(const std::vector<std::vector<int>>& adj, const std::vector<int>& sources, int depth,
                  std::vector<int>& dist) {
  std::deque<int> queue;
  for (int src : sources) {
    dist[src] = 0;
    queue.push_back(src);
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (dist[u] >= depth) continue;
    for (int v : adj[u]) {
      if (dist[v] > dist[u] + 1) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
}

}  // namespace

void select_gateways(Solution& s, const PlanningContext& context, Rng& rng, std::optional<int> count) {
  const auto& inst = context.instance();
  const int S = s.site_count();
  const int target = count.value_or(default_gateway_count(s, context));
  if (target < 1) throw ParameterError("gateway count must be at least 1");
  std::vector<int> nodes;
  for (int j = 0; j < S; ++j) {
    if (s.installed[j]) {
      nodes.push_back(j);
    } else {
      s.gateway[j] = 0;
    }
  }
  if (target > static_cast<int>(nodes.size())) {
    throw ParameterError("cannot select " + std::to_string(target) + " gateways among " +
                         std::to_string(nodes.size()) + " installed nodes");
  }
  std::vector<int> flagged;
  for (int j : nodes) {
    if (s.gateway[j]) flagged.push_back(j);
  }
  while (static_cast<int>(flagged.size()) > target) {
    const auto pos = rng.uniform_index(flagged.size());
    s.gateway[flagged[pos]] = 0;
    flagged.erase(flagged.begin() + static_cast<std::ptrdiff_t>(pos));
  }

  // Every site carrying demand needs a gateway within A hops: draw a random
  // uncovered site, then a random installed node within reach of it.
  const auto adj = hop_graph(s, context);
  const int A = inst.hop_bound;
  constexpr int kFar = std::numeric_limits<int>::max() / 2;
  std::vector<int> dist(S, kFar);
  relax_within(adj, flagged, A, dist);
  const auto demand = s.site_demand(inst);
  std::vector<int> uncovered, reach(S);
  for (;;) {
    uncovered.clear();
    for (int j : nodes) {
      if (demand[j] > 0.0 && dist[j] > A) uncovered.push_back(j);
    }
    if (uncovered.empty()) break;
    if (count && static_cast<int>(flagged.size()) >= target) {
      throw ConstructionInfeasible("site " + std::to_string(uncovered.front()) + " has no gateway within " +
                                   std::to_string(A) + " hops under a budget of " + std::to_string(target));
    }
    const int site = uncovered[rng.uniform_index(uncovered.size())];
    std::fill(reach.begin(), reach.end(), kFar);
    relax_within(adj, {site}, A, reach);
    std::vector<int> candidates;
    for (int j : nodes) {
      if (reach[j] <= A && !s.gateway[j]) candidates.push_back(j);
    }
    const int pick = candidates[rng.uniform_index(candidates.size())];
    s.gateway[pick] = 1;
    flagged.push_back(pick);
    relax_within(adj, {pick}, A, dist);
  }

  std::vector<int> pool;
  for (int j : nodes) {
    if (!s.gateway[j]) pool.push_back(j);
  }
  while (static_cast<int>(flagged.size()) < target) {
    const auto pos = rng.uniform_index(pool.size());
    s.gateway[pool[pos]] = 1;
    flagged.push_back(pool[pos]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pos));
  }
}

ChannelizationResult assign_channels(Solution& s, const PlanningContext& context) {
  const auto& inst = context.instance();
  const int S = s.site_count();
  const int K = inst.channels;
  s.clear_radio_layer();

  struct Candidate {
    int from, to, priority;
  };
  std::vector<Candidate> candidates;
  for (int j = 0; j < S; ++j) {
    if (!s.installed[j]) continue;
    for (int l : context.backbone_neighbors(j)) {
      if (l > j && s.installed[l]) {
        candidates.push_back({j, l, std::min(installed_backbone_degree(s, context, j),
                                             installed_backbone_degree(s, context, l))});
      }
    }
  }

  std::vector<int> degree(S, 0);
  std::vector<char> busy(static_cast<std::size_t>(S) * K, 0);
  std::vector<char> linked(candidates.size(), 0);
  auto try_link = [&](std::size_t c) {
    const auto [j, l, unused] = candidates[c];
    (void)unused;
    if (linked[c] || degree[j] >= inst.radios || degree[l] >= inst.radios) return;
    for (int k = 0; k < K; ++k) {
      if (busy[static_cast<std::size_t>(j) * K + k] || busy[static_cast<std::size_t>(l) * K + k]) continue;
      s.add_link(j, l, k);
      busy[static_cast<std::size_t>(j) * K + k] = busy[static_cast<std::size_t>(l) * K + k] = 1;
      ++degree[j];
      ++degree[l];
      linked[c] = 1;
      return;
    }
  };

  // Pass 1 serves nodes still below two links, sparsest neighbourhoods first;
  // pass 2 spends the remaining radios in plain (from, to) order.
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return candidates[a].priority < candidates[b].priority; });
  for (std::size_t c : order) {
    if (degree[candidates[c].from] < 2 || degree[candidates[c].to] < 2) try_link(c);
  }
  for (std::size_t c = 0; c < candidates.size(); ++c) try_link(c);

  ChannelizationResult result;
  for (int j = 0; j < S; ++j) {
    if (s.installed[j] && degree[j] < 2) result.deficient_sites.push_back(j);
  }
  return result;
}

std::optional<std::string> finish_plan(Solution& s, const PlanningContext& context, Rng& rng,
                                       std::optional<int> gateway_count) {
  s.clear_radio_layer();
  if (s.installed_count() == 0) {
    std::fill(s.gateway.begin(), s.gateway.end(), 0);
  } else {
    // Channels do not depend on gateway flags; assigning them first lets the
    // gateway draw measure hops over the real links.
    const auto channels = assign_channels(s, context);
    if (!channels.complete()) {
      return "channelization left site " + std::to_string(channels.deficient_sites.front()) +
             " with fewer than two links";
    }
    try {
      select_gateways(s, context, rng, gateway_count);
    } catch (const ParameterError& e) {
      return std::string(e.what());
    } catch (const ConstructionInfeasible& e) {
      return std::string(e.what());
    }
    try {
      route_flows(s, context);
    } catch (const RoutingInfeasible& e) {
      return std::string(e.what());
    }
  }
  const auto report = check_constraints(s, context);
  for (const auto& entry : report.entries) {
    if (!entry.satisfied) return "constraint " + std::string(constraint_code(entry.id)) + " violated";
  }
  return std::nullopt;
}

Solution construct_feasible(const PlanningContext& context, Rng& rng, const ConstructOptions& options) {
  if (options.max_retries < 1) throw ParameterError("max_retries must be at least 1");
  std::string cause = "no attempt made";
  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    Solution s(context);
    place_access_points(s, context, rng);
    try {
      build_backbone(s, context);
    } catch (const ConstructionInfeasible& e) {
      cause = e.what();
      continue;
    }
    auto failure = finish_plan(s, context, rng, options.gateway_count);
    if (!failure) return s;
    cause = *failure;
  }
  throw ConstructionInfeasible("no feasible construction after " + std::to_string(options.max_retries) +
                               " attempts; last failure: " + cause);
}

}  // namespace meshplan
