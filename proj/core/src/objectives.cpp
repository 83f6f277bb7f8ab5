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

#include "meshplan/objectives.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "meshplan/errors.hpp"
#include "meshplan/instance.hpp"

namespace meshplan {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

std::string_view to_string(ModelVariant variant) noexcept {
  switch (variant) {
    case ModelVariant::Cov: return "cov";
    case ModelVariant::Llb: return "llb";
    case ModelVariant::Glb: return "glb";
    case ModelVariant::Lglb: return "lglb";
  }
  return "?";
}

std::string_view to_string(CoverageMode mode) noexcept {
  return mode == CoverageMode::Assigned ? "assigned" : "literal";
}

ModelVariant parse_variant(std::string_view text) {
  const auto t = lower(text);
  if (t == "cov") return ModelVariant::Cov;
  if (t == "llb") return ModelVariant::Llb;
  if (t == "glb") return ModelVariant::Glb;
  if (t == "lglb") return ModelVariant::Lglb;
  throw ParameterError("unknown model variant '" + std::string(text) + "'");
}

CoverageMode parse_coverage_mode(std::string_view text) {
  const auto t = lower(text);
  if (t == "assigned") return CoverageMode::Assigned;
  if (t == "literal") return CoverageMode::Literal;
  throw ParameterError("unknown coverage mode '" + std::string(text) + "'");
}

bool uses_link_balance(ModelVariant variant) noexcept {
  return variant == ModelVariant::Llb || variant == ModelVariant::Lglb;
}

bool uses_gateway_balance(ModelVariant variant) noexcept {
  return variant == ModelVariant::Glb || variant == ModelVariant::Lglb;
}

std::size_t objective_count(ModelVariant variant) noexcept {
  return 2 + uses_link_balance(variant) + uses_gateway_balance(variant);
}

int evaluate_cost(const Solution& solution) {
  int cost = 0;
  for (int j = 0; j < solution.site_count(); ++j) {
    cost += solution.access_point[j] + solution.relay[j] + solution.gateway[j];
  }
  return cost;
}

int evaluate_coverage(const Solution& solution, const PlanningContext& context, CoverageMode mode) {
  int total = 0;
  if (mode == CoverageMode::Assigned) {
    for (int i = 0; i < solution.demand_count(); ++i) {
      for (auto cell : solution.assignment.row(i)) total += cell != 0;
    }
    return total;
  }
  for (int i = 0; i < context.demand_count(); ++i) {
    for (int j : context.covering_sites(i)) total += solution.relay[j] != 0;
  }
  return total;
}

double evaluate_link_balance(const Solution& solution, const PlanningInstance& instance) {
  if (solution.links.empty()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& link : solution.links) {
    const double used =
        solution.flow(link.from, link.to, link.channel) + solution.flow(link.to, link.from, link.channel);
    best = std::min(best, instance.link_capacity(link.from, link.to, link.channel) - used);
  }
  return best;
}

double evaluate_gateway_balance(std::span<const double> gateway_flows) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double f : gateway_flows) {
    sum += f;
    sum_sq += f * f;
  }
  if (sum <= 0.0) return 0.0;
  return std::sqrt(sum_sq / sum);
}

double evaluate_gateway_balance(const Solution& solution) { return evaluate_gateway_balance(solution.uplink_flow); }

RawObjectives evaluate_raw(const Solution& solution, const PlanningContext& context, CoverageMode mode) {
  return {evaluate_cost(solution), evaluate_coverage(solution, context, mode),
          evaluate_link_balance(solution, context.instance()), evaluate_gateway_balance(solution)};
}

ObjectiveVector orient(const RawObjectives& raw, ModelVariant variant) {
  std::vector<double> values{static_cast<double>(raw.cost), -static_cast<double>(raw.coverage)};
  // 0.0 - x keeps a positive zero when x is zero.
  if (uses_link_balance(variant)) values.push_back(0.0 - raw.link_residual);
  if (uses_gateway_balance(variant)) values.push_back(raw.gateway_balance);
  for (auto& v : values) {
    if (v == 0.0) v = 0.0;
  }
  return ObjectiveVector(std::move(values));
}

ObjectiveVector evaluate(const Solution& solution, const PlanningContext& context, ModelVariant variant,
                         CoverageMode mode) {
  return orient(evaluate_raw(solution, context, mode), variant);
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw ParameterError("objective vectors differ in length (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

}  // namespace meshplan
