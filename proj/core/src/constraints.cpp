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

#include "meshplan/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <nlohmann/json.hpp>

#include "meshplan/errors.hpp"
#include "meshplan/flow.hpp"
#include "meshplan/instance.hpp"

namespace meshplan {

namespace {

// Variable codes used in C15 violation tuples: {code, indices...}.
enum DomainCode : int { kZ = 0, kN, kR, kG, kX, kW, kF, kUplink, kRoles, kSelfLink };

bool is_binary(std::uint8_t v) { return v == 0 || v == 1; }

void violate(ConstraintReport& report, ConstraintId id, std::vector<int> where) {
  auto& entry = report[id];
  entry.satisfied = false;
  entry.violations.push_back(std::move(where));
}

}  // namespace

std::string_view constraint_code(ConstraintId id) noexcept {
  static constexpr std::string_view codes[] = {"C1", "C2",  "C3",  "C4",  "C5",  "C6",  "C7", "C8",
                                               "C9", "C10", "C11", "C12", "C13", "C14", "C15"};
  return codes[static_cast<int>(id) - 1];
}

std::string_view constraint_name(ConstraintId id) noexcept {
  static constexpr std::string_view names[] = {
      "assignment uniqueness", "assignment validity",       "radio budget per node",
      "channels per link",     "channel uniqueness per node", "no simultaneous same-channel tx/rx",
      "link existence",        "channel activations bounded", "access capacity",
      "link capacity",         "flow balance",              "hop bound",
      "gateway flow gating",   "robustness",                "variable domains"};
  return names[static_cast<int>(id) - 1];
}

bool ConstraintReport::feasible() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.satisfied; });
}

ConstraintReport check_constraints(const Solution& s, const PlanningContext& context) {
  const auto& inst = context.instance();
  const int S = context.site_count();
  const int N = context.demand_count();
  const int K = context.channel_count();
  if (s.site_count() != S || s.demand_count() != N || s.channel_count() != K ||
      static_cast<int>(s.access_point.size()) != S || static_cast<int>(s.relay.size()) != S ||
      static_cast<int>(s.gateway.size()) != S || static_cast<int>(s.uplink_flow.size()) != S) {
    throw ParameterError("solution dimensions do not match the instance");
  }

  ConstraintReport report;
  for (int c = 0; c < kConstraintCount; ++c) report.entries[c].id = static_cast<ConstraintId>(c + 1);

  // C15 first: domains and role structure.
  const std::pair<const std::vector<std::uint8_t>*, int> flag_sets[] = {
      {&s.installed, kZ}, {&s.access_point, kN}, {&s.relay, kR}, {&s.gateway, kG}};
  for (const auto& [flags, code] : flag_sets) {
    for (int j = 0; j < S; ++j) {
      if (!is_binary((*flags)[j])) violate(report, ConstraintId::Domains, {code, j});
    }
  }
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < S; ++j) {
      if (!is_binary(s.assignment(i, j))) violate(report, ConstraintId::Domains, {kX, i, j});
    }
  }
  for (int j = 0; j < S; ++j) {
    for (int k = 0; k < K; ++k) {
      if (!is_binary(s.channel_active(j, k))) violate(report, ConstraintId::Domains, {kW, j, k});
    }
    const bool z = s.installed[j] != 0, n = s.access_point[j] != 0, r = s.relay[j] != 0, g = s.gateway[j] != 0;
    if (z != (n || r) || (n && r) || (g && !z)) violate(report, ConstraintId::Domains, {kRoles, j});
    const double F = s.uplink_flow[j];
    if (!std::isfinite(F) || F < 0.0) violate(report, ConstraintId::Domains, {kUplink, j});
  }
  for (const auto& f : s.link_flows) {
    if (!std::isfinite(f.amount) || f.amount < 0.0) {
      violate(report, ConstraintId::Domains, {kF, f.from, f.to, f.channel});
    }
  }
  for (const auto& l : s.links) {
    if (l.from == l.to) violate(report, ConstraintId::Domains, {kSelfLink, l.from, l.to, l.channel});
  }

  // C1, C2.
  for (int i = 0; i < N; ++i) {
    int count = 0;
    for (int j = 0; j < S; ++j) {
      if (!s.assignment(i, j)) continue;
      ++count;
      if (!context.coverage().covers(i, j) || !s.installed[j]) violate(report, ConstraintId::AssignmentValidity, {i, j});
    }
    if (count > 1) violate(report, ConstraintId::AssignmentUniqueness, {i});
  }

  // Link-structure constraints. Incident counts treat each link as undirected.
  std::vector<int> incident(S, 0);
  std::vector<int> outgoing(static_cast<std::size_t>(S) * K, 0);
  std::vector<int> touching(static_cast<std::size_t>(S) * K, 0);
  std::map<std::pair<int, int>, int> per_pair;
  for (const auto& l : s.links) {
    ++incident[l.from];
    if (l.to != l.from) ++incident[l.to];
    ++outgoing[static_cast<std::size_t>(l.from) * K + l.channel];
    ++touching[static_cast<std::size_t>(l.from) * K + l.channel];
    if (l.to != l.from) ++touching[static_cast<std::size_t>(l.to) * K + l.channel];
    ++per_pair[{std::min(l.from, l.to), std::max(l.from, l.to)}];
    const int b = context.connectivity().connected(l.from, l.to) ? 1 : 0;
    if (2 > b * (s.channel_active(l.from, l.channel) + s.channel_active(l.to, l.channel))) {
      violate(report, ConstraintId::LinkExistence, {l.from, l.to, l.channel});
    }
  }
  for (int j = 0; j < S; ++j) {
    if (incident[j] > inst.radios) violate(report, ConstraintId::RadioBudget, {j});
    if (s.installed[j] && incident[j] < 2) violate(report, ConstraintId::Robustness, {j});
    for (int k = 0; k < K; ++k) {
      if (outgoing[static_cast<std::size_t>(j) * K + k] > 1) violate(report, ConstraintId::ChannelUniqueness, {j, k});
      if (touching[static_cast<std::size_t>(j) * K + k] > 1) violate(report, ConstraintId::NoSimultaneousTxRx, {j, k});
    }
    int active = 0;
    for (int k = 0; k < K; ++k) active += s.channel_active(j, k);
    if (active > inst.radios * s.installed[j]) violate(report, ConstraintId::ChannelActivations, {j});
  }
  for (const auto& [pair, count] : per_pair) {
    if (count > K) violate(report, ConstraintId::ChannelsPerLink, {pair.first, pair.second});
  }

  // C9.
  const auto demand = s.site_demand(inst);
  for (int j = 0; j < S; ++j) {
    if (demand[j] > inst.interface_capacity + kFeasibilityTolerance) violate(report, ConstraintId::AccessCapacity, {j});
  }

  // C10: flows only on established links, total per link within capacity.
  for (const auto& f : s.link_flows) {
    if (f.amount == 0.0) continue;
    if (!s.has_link(f.from, f.to, f.channel) && !s.has_link(f.to, f.from, f.channel)) {
      violate(report, ConstraintId::LinkCapacity, {f.from, f.to, f.channel});
    }
  }
  for (const auto& l : s.links) {
    const double used = s.flow(l.from, l.to, l.channel) + (l.from != l.to ? s.flow(l.to, l.from, l.channel) : 0.0);
    if (used > inst.link_capacity(l.from, l.to, l.channel) + kFeasibilityTolerance) {
      violate(report, ConstraintId::LinkCapacity, {l.from, l.to, l.channel});
    }
  }

  // C11 canonical conservation; C13 gateway gating.
  std::vector<double> inflow(S, 0.0), outflow(S, 0.0);
  for (const auto& f : s.link_flows) {
    outflow[f.from] += f.amount;
    inflow[f.to] += f.amount;
  }
  for (int j = 0; j < S; ++j) {
    const double residual = demand[j] + inflow[j] - outflow[j] - s.uplink_flow[j];
    const bool stray_uplink = !s.gateway[j] && s.uplink_flow[j] != 0.0;
    if (std::abs(residual) > kFeasibilityTolerance || stray_uplink) violate(report, ConstraintId::FlowBalance, {j});
    if (s.uplink_flow[j] > inst.big_m * s.gateway[j] + kFeasibilityTolerance) {
      violate(report, ConstraintId::GatewayFlowGating, {j});
    }
  }

  // C12: every site carrying client demand reaches a gateway within A hops.
  bool any_demand = false;
  for (int j = 0; j < S; ++j) any_demand = any_demand || demand[j] > 0.0;
  if (any_demand) {
    const HopMatrix hops = hop_distances(s);
    for (int l = 0; l < S; ++l) {
      if (demand[l] <= 0.0) continue;
      int nearest = std::numeric_limits<int>::max();
      for (int j = 0; j < S; ++j) {
        if (s.gateway[j] && hops(l, j) != kUnreachable) nearest = std::min(nearest, hops(l, j));
      }
      if (nearest > inst.hop_bound) violate(report, ConstraintId::HopBound, {l});
    }
  }
  return report;
}

nlohmann::json report_to_json(const ConstraintReport& report) {
  nlohmann::json doc;
  doc["feasible"] = report.feasible();
  auto list = nlohmann::json::array();
  for (const auto& e : report.entries) {
    list.push_back({{"id", constraint_code(e.id)},
                    {"name", constraint_name(e.id)},
                    {"satisfied", e.satisfied},
                    {"violations", e.violations}});
  }
  doc["constraints"] = std::move(list);
  return doc;
}

}  // namespace meshplan
