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

#include "meshplan/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "meshplan/constraints.hpp"
#include "meshplan/construct.hpp"
#include "meshplan/errors.hpp"
#include "meshplan/flow.hpp"
#include "meshplan/instance.hpp"
#include "meshplan/rng.hpp"

namespace meshplan {

namespace {

using Mask = std::uint32_t;

struct Edge {
  int from, to;
};

}  // namespace

void check_oracle_guard(const PlanningContext& context) {
  const int S = context.site_count();
  const int N = context.demand_count();
  const int K = context.channel_count();
  if (S > kOracleMaxSites || N > kOracleMaxDemandPoints || K > kOracleMaxChannels) {
    throw GuardRefusal("oracle enumeration refused: instance has " + std::to_string(S) + " sites, " +
                       std::to_string(N) + " demand points, " + std::to_string(K) +
                       " channels; limits are s <= " + std::to_string(kOracleMaxSites) +
                       ", n <= " + std::to_string(kOracleMaxDemandPoints) + ", K <= " +
                       std::to_string(kOracleMaxChannels));
  }
}

namespace {

template <typename T>
void maybe_shuffle(std::vector<T>& items, Rng* rng) {
  if (!rng) return;
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng->uniform_index(i)]);
}

// Every link layout over the installed nodes that respects the radio budget,
// per-node channel exclusivity and the two-link floor.
std::vector<std::vector<Link>> link_layouts(const PlanningContext& context, Mask installed) {
  const int S = context.site_count();
  const int K = context.channel_count();
  const int R = context.instance().radios;
  std::vector<Edge> edges;
  for (int j = 0; j < S; ++j) {
    if (!(installed >> j & 1U)) continue;
    for (int l : context.backbone_neighbors(j)) {
      if (l > j && (installed >> l & 1U)) edges.push_back({j, l});
    }
  }
  // Nodes whose last candidate edge is edges[e]; the floor is checked there.
  std::vector<int> last_edge(S, -1);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) last_edge[edges[e].from] = last_edge[edges[e].to] = e;
  for (int j = 0; j < S; ++j) {
    if ((installed >> j & 1U) && last_edge[j] == -1) return {};
  }

  std::vector<std::vector<Link>> out;
  std::vector<Mask> busy(S, 0);
  std::vector<Link> current;
  auto recurse = [&](auto&& self, int e) -> void {
    if (e == static_cast<int>(edges.size())) {
      out.push_back(current);
      return;
    }
    const auto [j, l] = edges[e];
    for (Mask subset = 0; subset < (Mask{1} << K); ++subset) {
      if ((busy[j] | busy[l]) & subset) continue;
      const Mask bj = busy[j] | subset, bl = busy[l] | subset;
      if (std::popcount(bj) > R || std::popcount(bl) > R) continue;
      if (last_edge[j] == e && std::popcount(bj) < 2) continue;
      if (last_edge[l] == e && std::popcount(bl) < 2) continue;
      busy[j] = bj;
      busy[l] = bl;
      for (int k = 0; k < K; ++k) {
        if (subset >> k & 1U) current.push_back({j, l, k});
      }
      self(self, e + 1);
      current.resize(current.size() - static_cast<std::size_t>(std::popcount(subset)));
      busy[j] ^= subset;
      busy[l] ^= subset;
    }
  };
  recurse(recurse, 0);
  return out;
}

// Distinct demand assignments onto the given access points, one
// representative per (covered set, per-site load) pair. host[i] = -1 means
// unassigned.
std::vector<std::vector<int>> demand_assignments(const PlanningContext& context, Mask aps, bool maximal) {
  const auto& inst = context.instance();
  const int S = context.site_count();
  const int N = context.demand_count();
  const double cap = inst.interface_capacity + kFeasibilityTolerance;
  using Key = std::pair<Mask, std::vector<double>>;
  std::map<Key, std::vector<int>> layer;
  layer.emplace(Key{0, std::vector<double>(S, 0.0)}, std::vector<int>(N, -1));
  for (int i = 0; i < N; ++i) {
    const double t = inst.demand_points[i].traffic;
    std::map<Key, std::vector<int>> next;
    for (const auto& [key, hosts] : layer) {
      next.emplace(key, hosts);
      for (int j : context.covering_sites(i)) {
        if (!(aps >> j & 1U) || key.second[j] + t > cap) continue;
        Key k2 = key;
        k2.first |= Mask{1} << i;
        k2.second[j] += t;
        auto h2 = hosts;
        h2[i] = j;
        next.emplace(std::move(k2), std::move(h2));
      }
    }
    layer = std::move(next);
  }
  std::vector<std::vector<int>> out;
  for (const auto& [key, hosts] : layer) {
    bool keep = true;
    for (int i = 0; i < N && keep && maximal; ++i) {
      if (hosts[i] != -1) continue;
      for (int j : context.covering_sites(i)) {
        if (!(aps >> j & 1U) || key.second[j] + inst.demand_points[i].traffic <= cap) {
          keep = false;
          break;
        }
      }
    }
    if (keep) out.push_back(hosts);
  }
  return out;
}

void gateway_subsets(Mask installed, int count, std::vector<Mask>& out) {
  out.clear();
  for (Mask m = installed;; m = (m - 1) & installed) {
    if (count < 0 ? m != 0 : std::popcount(m) == count) out.push_back(m);
    if (m == 0) break;
  }
  std::reverse(out.begin(), out.end());
}

// Every terminal state of greedy access-point placement from an empty plan:
// repeatedly open any site that can still host an unassigned DP and give it
// every such DP it can hold, in DP order. Returns host vectors.
std::vector<std::vector<int>> greedy_placements(const PlanningContext& context) {
  const auto& inst = context.instance();
  const int S = context.site_count();
  const int N = context.demand_count();
  const double cap = inst.interface_capacity + kFeasibilityTolerance;
  std::set<std::vector<int>> seen;
  std::set<std::vector<int>> terminal;
  std::vector<int> hosts(N, -1);
  std::vector<double> load(S, 0.0);
  auto fits = [&](int i, int j) { return hosts[i] == -1 && load[j] + inst.demand_points[i].traffic <= cap; };
  auto recurse = [&](auto&& self) -> void {
    if (!seen.insert(hosts).second) return;
    bool any = false;
    for (int j = 0; j < S; ++j) {
      const auto dps = context.covered_demand_points(j);
      if (std::none_of(dps.begin(), dps.end(), [&](int i) { return fits(i, j); })) continue;
      any = true;
      const auto saved_hosts = hosts;
      const double saved_load = load[j];
      for (int i : dps) {
        if (fits(i, j)) {
          hosts[i] = j;
          load[j] += inst.demand_points[i].traffic;
        }
      }
      self(self);
      hosts = saved_hosts;
      load[j] = saved_load;
    }
    if (!any) terminal.insert(hosts);
  };
  recurse(recurse);
  return {terminal.begin(), terminal.end()};
}

// True when every site carrying demand has a gateway in gw within A hops.
bool hop_covered(const HopMatrix& hops, const std::vector<double>& demand, Mask gw, int A) {
  for (int j = 0; j < hops.site_count(); ++j) {
    if (demand[j] <= 0.0) continue;
    bool reached = false;
    for (int g = 0; g < hops.site_count() && !reached; ++g) {
      const int h = hops(j, g);
      reached = (gw >> g & 1U) && h != kUnreachable && h <= A;
    }
    if (!reached) return false;
  }
  return true;
}

// Gateway subsets admitted by the gateway-count policy for a plan whose links
// are already in place. The automatic budget starts at the capacity floor and
// grows only while no subset of that size reaches every demand site.
void policy_gateway_subsets(const Solution& s, const PlanningContext& context, const OracleOptions& options,
                            Mask installed, std::vector<Mask>& out) {
  if (installed == 0) {
    gateway_subsets(installed, 0, out);
    return;
  }
  if (options.gateway_count) {
    gateway_subsets(installed, *options.gateway_count, out);
    return;
  }
  if (!options.auto_gateway_count) {
    gateway_subsets(installed, -1, out);
    return;
  }
  const auto hops = hop_distances(s);
  const auto demand = s.site_demand(context.instance());
  const int A = context.instance().hop_bound;
  for (int k = default_gateway_count(s, context); k <= std::popcount(installed); ++k) {
    gateway_subsets(installed, k, out);
    if (std::any_of(out.begin(), out.end(), [&](Mask gw) { return hop_covered(hops, demand, gw, A); })) return;
  }
  gateway_subsets(installed, default_gateway_count(s, context), out);
}

}  // namespace

std::size_t enumerate_feasible(const PlanningContext& context, ModelVariant variant, const OracleOptions& options,
                               const FeasibleVisitor& visit) {
  check_oracle_guard(context);
  const int S = context.site_count();
  std::optional<Rng> shuffle;
  if (options.shuffle_seed != 0) shuffle.emplace(options.shuffle_seed);
  Rng* rng = shuffle ? &*shuffle : nullptr;

  std::size_t evaluated = 0;
  std::vector<Mask> gateways;
  // s carries roles, assignment and links; each gateway subset is routed and
  // checked on a copy.
  auto evaluate_gateways = [&](const Solution& s, Mask installed) {
    policy_gateway_subsets(s, context, options, installed, gateways);
    maybe_shuffle(gateways, rng);
    for (Mask gw : gateways) {
      if (++evaluated > options.max_candidates) {
        throw GuardRefusal("oracle enumeration exceeded " + std::to_string(options.max_candidates) + " candidates");
      }
      Solution candidate = s;
      for (int j = 0; j < S; ++j) candidate.gateway[j] = gw >> j & 1U;
      if (installed != 0) {
        try {
          route_flows(candidate, context);
        } catch (const RoutingInfeasible&) {
          continue;
        }
      }
      const auto report = check_constraints(candidate, context);
      if (!report.feasible()) {
        for (const auto& entry : report.entries) {
          if (!entry.satisfied) {
            throw Error("oracle produced a candidate the checker rejects under " +
                        std::string(constraint_code(entry.id)));
          }
        }
      }
      visit(candidate, evaluate(candidate, context, variant, options.coverage_mode));
    }
  };

  if (options.construction_policy) {
    auto placements = greedy_placements(context);
    maybe_shuffle(placements, rng);
    for (const auto& hosts : placements) {
      Solution s(context);
      for (int i = 0; i < context.demand_count(); ++i) {
        if (hosts[i] == -1) continue;
        if (!s.access_point[hosts[i]]) s.install_access_point(hosts[i]);
        s.assignment(i, hosts[i]) = 1;
      }
      try {
        build_backbone(s, context);
      } catch (const ConstructionInfeasible&) {
        continue;
      }
      Mask installed = 0;
      for (int j = 0; j < S; ++j) installed |= static_cast<Mask>(s.installed[j] != 0) << j;
      if (installed != 0 && !assign_channels(s, context).complete()) continue;
      evaluate_gateways(s, installed);
    }
    return evaluated;
  }

  std::vector<Mask> installed_masks(std::size_t{1} << S);
  std::iota(installed_masks.begin(), installed_masks.end(), Mask{0});
  maybe_shuffle(installed_masks, rng);
  for (Mask installed : installed_masks) {
    auto layouts = link_layouts(context, installed);
    if (installed == 0) layouts.assign(1, {});
    maybe_shuffle(layouts, rng);

    std::vector<Mask> role_masks;
    for (Mask m = installed;; m = (m - 1) & installed) {
      role_masks.push_back(m);
      if (m == 0) break;
    }
    maybe_shuffle(role_masks, rng);

    for (Mask aps : role_masks) {
      auto assignments = demand_assignments(context, aps, options.maximal_coverage);
      maybe_shuffle(assignments, rng);
      for (const auto& hosts : assignments) {
        Solution base(context);
        for (int j = 0; j < S; ++j) {
          if (aps >> j & 1U) {
            base.install_access_point(j);
          } else if (installed >> j & 1U) {
            base.install_relay(j);
          }
        }
        for (int i = 0; i < context.demand_count(); ++i) {
          if (hosts[i] != -1) base.assignment(i, hosts[i]) = 1;
        }
        for (const auto& layout : layouts) {
          Solution linked = base;
          for (const auto& l : layout) linked.add_link(l.from, l.to, l.channel);
          evaluate_gateways(linked, installed);
        }
      }
    }
  }
  return evaluated;
}

std::vector<ObjectiveVector> pareto_filter(std::vector<ObjectiveVector> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<ObjectiveVector> front;
  for (const auto& p : points) {
    const bool dominated =
        std::any_of(points.begin(), points.end(), [&](const ObjectiveVector& q) { return dominates(q, p); });
    if (!dominated) front.push_back(p);
  }
  return front;
}

std::vector<ObjectiveVector> true_pareto_front(const PlanningContext& context, ModelVariant variant,
                                               const OracleOptions& options) {
  std::vector<ObjectiveVector> front;
  enumerate_feasible(context, variant, options, [&](const Solution&, const ObjectiveVector& v) {
    if (std::any_of(front.begin(), front.end(), [&](const ObjectiveVector& q) { return q == v || dominates(q, v); })) {
      return;
    }
    std::erase_if(front, [&](const ObjectiveVector& q) { return dominates(v, q); });
    front.push_back(v);
  });
  return pareto_filter(std::move(front));
}

ArchiveVerification verify_archive(const Front& archive, const Front& truth) {
  if (archive.variant != truth.variant) {
    throw ParameterError("variant mismatch: archive is " + std::string(to_string(archive.variant)) +
                         ", truth is " + std::string(to_string(truth.variant)));
  }
  auto close = [](const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t m = 0; m < a.size(); ++m) {
      if (std::abs(a[m] - b[m]) > kFeasibilityTolerance) return false;
    }
    return true;
  };
  auto strictly_dominated = [&](const ObjectiveVector& a, const ObjectiveVector& t) {
    return !close(a, t) && dominates(t, a);
  };

  ArchiveVerification result;
  std::size_t on_front = 0;
  for (const auto& a : archive.points) {
    const bool bad =
        std::any_of(truth.points.begin(), truth.points.end(), [&](const auto& t) { return strictly_dominated(a, t); });
    if (bad) {
      result.violations.push_back(a);
    } else {
      ++on_front;
    }
  }
  result.on_front_fraction =
      archive.points.empty() ? 1.0 : static_cast<double>(on_front) / static_cast<double>(archive.points.size());
  std::size_t matched = 0;
  for (const auto& t : truth.points) {
    matched += std::any_of(archive.points.begin(), archive.points.end(), [&](const auto& a) { return close(a, t); });
  }
  result.front_coverage_fraction =
      truth.points.empty() ? 1.0 : static_cast<double>(matched) / static_cast<double>(truth.points.size());
  return result;
}

nlohmann::json front_to_json(const Front& front, std::uint64_t instance_hash, CoverageMode mode) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : front.points) points.push_back(std::vector<double>(p.values().begin(), p.values().end()));
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(instance_hash));
  return {{"instance_hash", hash},
          {"variant", to_string(front.variant)},
          {"coverage_mode", to_string(mode)},
          {"front", std::move(points)}};
}

Front front_from_json(const nlohmann::json& document, std::uint64_t* instance_hash) {
  try {
    Front front;
    front.variant = parse_variant(document.at("variant").get<std::string>());
    for (const auto& p : document.at("front")) front.points.emplace_back(p.get<std::vector<double>>());
    if (instance_hash) *instance_hash = std::stoull(document.at("instance_hash").get<std::string>(), nullptr, 16);
    return front;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed front fixture: ") + e.what());
  } catch (const std::logic_error& e) {
    throw SchemaError(std::string("malformed instance hash: ") + e.what());
  }
}

}  // namespace meshplan
