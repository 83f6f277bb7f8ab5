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

#ifndef MESHPLAN_OBJECTIVES_HPP
#define MESHPLAN_OBJECTIVES_HPP

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meshplan/solution.hpp"

namespace meshplan {

class PlanningContext;
struct PlanningInstance;

// COV = {cost, coverage}; LLB adds link balance; GLB adds gateway balance;
// LGLB uses all four.
enum class ModelVariant { Cov, Llb, Glb, Lglb };

enum class CoverageMode {
  Assigned,  // number of demand points actually assigned
  Literal,   // sum_ij a_ij r_j
};

std::string_view to_string(ModelVariant variant) noexcept;
std::string_view to_string(CoverageMode mode) noexcept;
// Case-insensitive; throws ParameterError.
ModelVariant parse_variant(std::string_view text);
CoverageMode parse_coverage_mode(std::string_view text);

std::size_t objective_count(ModelVariant variant) noexcept;
bool uses_link_balance(ModelVariant variant) noexcept;
bool uses_gateway_balance(ModelVariant variant) noexcept;

// Objective values in minimization orientation, ordered (cost, coverage,
// link, gateway) and filtered by the model variant.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;
  explicit ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {}
  ObjectiveVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  auto operator<=>(const ObjectiveVector&) const = default;

 private:
  std::vector<double> values_;
};

// The four raw objective values in their natural orientation.
struct RawObjectives {
  int cost = 0;
  int coverage = 0;
  double link_residual = 0.0;
  double gateway_balance = 0.0;
  bool operator==(const RawObjectives&) const = default;
};

// sum_j (n_j + r_j + g_j).
int evaluate_cost(const Solution& solution);
int evaluate_coverage(const Solution& solution, const PlanningContext& context,
                      CoverageMode mode = CoverageMode::Assigned);
// Minimum residual capacity over established links; 0 when there are none.
double evaluate_link_balance(const Solution& solution, const PlanningInstance& instance);
// sqrt(sum F^2 / sum F); 0 when no traffic reaches a gateway.
double evaluate_gateway_balance(std::span<const double> gateway_flows);
double evaluate_gateway_balance(const Solution& solution);

RawObjectives evaluate_raw(const Solution& solution, const PlanningContext& context,
                           CoverageMode mode = CoverageMode::Assigned);
ObjectiveVector orient(const RawObjectives& raw, ModelVariant variant);
ObjectiveVector evaluate(const Solution& solution, const PlanningContext& context,
                         ModelVariant variant, CoverageMode mode = CoverageMode::Assigned);

// Pareto dominance under minimization. Throws ParameterError on size mismatch.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

}  // namespace meshplan

#endif  // MESHPLAN_OBJECTIVES_HPP
