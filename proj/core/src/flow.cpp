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

#include "meshplan/flow.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <tuple>

#include <nlohmann/json.hpp>

#include "meshplan/constraints.hpp"
#include "meshplan/errors.hpp"
#include "meshplan/instance.hpp"

namespace meshplan {

namespace {

struct Arc {
  int neighbor;
  int link;  // index into Solution::links
};

// Undirected adjacency, arcs sorted by (neighbor, channel).
std::vector<std::vector<Arc>> build_adjacency(const Solution& s) {
  std::vector<std::vector<Arc>> adj(s.site_count());
  for (int idx = 0; idx < static_cast<int>(s.links.size()); ++idx) {
    const auto& l = s.links[idx];
    if (l.from == l.to) continue;
    adj[l.from].push_back({l.to, idx});
    adj[l.to].push_back({l.from, idx});
  }
  for (auto& arcs : adj) {
    std::sort(arcs.begin(), arcs.end(), [&](const Arc& a, const Arc& b) {
      return std::tie(a.neighbor, s.links[a.link].channel, a.link) <
             std::tie(b.neighbor, s.links[b.link].channel, b.link);
    });
  }
  return adj;
}

std::vector<int> bfs(const std::vector<std::vector<Arc>>& adj, int source, const std::vector<char>* removed) {
  std::vector<int> dist(adj.size(), kUnreachable);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& arc : adj[u]) {
      if (removed && (*removed)[arc.link]) continue;
      if (dist[arc.neighbor] == kUnreachable) {
        dist[arc.neighbor] = dist[u] + 1;
        queue.push_back(arc.neighbor);
      }
    }
  }
  return dist;
}

}  // namespace

HopMatrix hop_distances(const Solution& solution) {
  const int S = solution.site_count();
  HopMatrix hops(S);
  const auto adj = build_adjacency(solution);
  for (int j = 0; j < S; ++j) {
    const auto dist = bfs(adj, j, nullptr);
    for (int l = 0; l < S; ++l) hops(j, l) = dist[l];
  }
  return hops;
}

std::vector<RoutingTrace> route_flows(Solution& s, const PlanningContext& context, const RoutingOptions& options) {
  const auto& inst = context.instance();
  const int S = s.site_count();
  s.clear_flows();

  const auto adj = build_adjacency(s);
  std::vector<double> residual(s.links.size());
  for (std::size_t idx = 0; idx < s.links.size(); ++idx) {
    const auto& l = s.links[idx];
    residual[idx] = inst.link_capacity(l.from, l.to, l.channel);
  }
  std::map<std::tuple<int, int, int>, double> flows;
  const auto demand = s.site_demand(inst);
  std::vector<RoutingTrace> traces;

  for (int src = 0; src < S; ++src) {
    const double D = demand[src];
    if (D <= 0.0) continue;
    if (s.gateway[src]) {
      s.uplink_flow[src] += D;
      traces.push_back({src, src, {src}, {}, D});
      continue;
    }

    const auto dist_from_src = bfs(adj, src, nullptr);
    std::vector<int> candidates;
    for (int g = 0; g < S; ++g) {
      if (s.gateway[g] && dist_from_src[g] != kUnreachable && dist_from_src[g] <= inst.hop_bound) {
        candidates.push_back(g);
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](int a, int b) { return dist_from_src[a] < dist_from_src[b]; });

    // Links too full for this demand; shared across gateways since residuals
    // do not change while this source is being placed.
    std::vector<char> removed(s.links.size(), 0);
    bool routed = false;
    for (int g : candidates) {
      for (int attempt = 0; attempt < options.max_paths_per_gateway && !routed; ++attempt) {
        const auto to_gateway = bfs(adj, g, &removed);
        if (to_gateway[src] == kUnreachable || to_gateway[src] > inst.hop_bound) break;
        std::vector<int> path{src};
        std::vector<int> hop_links;
        int u = src;
        while (u != g) {
          for (const auto& arc : adj[u]) {
            if (!removed[arc.link] && to_gateway[arc.neighbor] == to_gateway[u] - 1) {
              path.push_back(arc.neighbor);
              hop_links.push_back(arc.link);
              u = arc.neighbor;
              break;
            }
          }
        }
        bool fits = true;
        for (int idx : hop_links) {
          if (residual[idx] + kFeasibilityTolerance < D) {
            removed[idx] = 1;
            fits = false;
          }
        }
        if (!fits) continue;

        RoutingTrace trace{src, g, path, {}, D};
        for (std::size_t h = 0; h < hop_links.size(); ++h) {
          const int idx = hop_links[h];
          const int channel = s.links[idx].channel;
          residual[idx] -= D;
          flows[{path[h], path[h + 1], channel}] += D;
          trace.channels.push_back(channel);
        }
        s.uplink_flow[g] += D;
        traces.push_back(std::move(trace));
        routed = true;
      }
      if (routed) break;
    }
    if (!routed) {
      throw RoutingInfeasible(src, "site " + std::to_string(src) + " cannot reach a gateway within capacity and " +
                                       std::to_string(inst.hop_bound) + " hops");
    }
  }

  s.link_flows.reserve(flows.size());
  for (const auto& [key, amount] : flows) {
    const auto& [from, to, channel] = key;
    s.link_flows.push_back({from, to, channel, amount});
  }
  return traces;
}

double literal_flow_balance(const Solution& s, const PlanningInstance& instance, int site) {
  double total = 0.0;
  for (int i = 0; i < s.demand_count(); ++i) {
    if (s.assignment(i, site)) total += instance.demand_points[i].traffic;
  }
  for (const auto& f : s.link_flows) {
    if (f.from == site) total += f.amount;
    if (f.to == site) total += f.amount;
  }
  return total - s.uplink_flow[site];
}

double canonical_flow_residual(const Solution& s, const PlanningInstance& instance, int site) {
  double total = 0.0;
  for (int i = 0; i < s.demand_count(); ++i) {
    if (s.assignment(i, site)) total += instance.demand_points[i].traffic;
  }
  for (const auto& f : s.link_flows) {
    if (f.to == site) total += f.amount;
    if (f.from == site) total -= f.amount;
  }
  return total - s.uplink_flow[site];
}

std::vector<std::pair<int, double>> gateway_throughputs(const Solution& s) {
  std::vector<std::pair<int, double>> out;
  for (int j = 0; j < s.site_count(); ++j) {
    if (s.gateway[j]) out.emplace_back(j, s.uplink_flow[j]);
  }
  return out;
}

nlohmann::json traces_to_json(const std::vector<RoutingTrace>& traces) {
  auto out = nlohmann::json::array();
  for (const auto& t : traces) {
    out.push_back({{"source", t.source_site},
                   {"gateway", t.gateway_site},
                   {"path", t.path},
                   {"channels", t.channels},
                   {"demand", t.demand}});
  }
  return out;
}

}  // namespace meshplan
