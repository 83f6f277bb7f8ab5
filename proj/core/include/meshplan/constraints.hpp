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

#ifndef MESHPLAN_CONSTRAINTS_HPP
#define MESHPLAN_CONSTRAINTS_HPP

#include <array>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "meshplan/solution.hpp"

namespace meshplan {

class PlanningContext;

// Absolute tolerance for every real-valued comparison, in Mb/s.
inline constexpr double kFeasibilityTolerance = 1e-9;

enum class ConstraintId {
  AssignmentUniqueness = 1,  // C1
  AssignmentValidity,        // C2
  RadioBudget,               // C3
  ChannelsPerLink,           // C4
  ChannelUniqueness,         // C5
  NoSimultaneousTxRx,        // C6
  LinkExistence,             // C7
  ChannelActivations,        // C8
  AccessCapacity,            // C9
  LinkCapacity,              // C10
  FlowBalance,               // C11
  HopBound,                  // C12
  GatewayFlowGating,         // C13
  Robustness,                // C14
  Domains,                   // C15
};

inline constexpr int kConstraintCount = 15;

std::string_view constraint_code(ConstraintId id) noexcept;  // "C1".."C15"
std::string_view constraint_name(ConstraintId id) noexcept;

struct ConstraintResult {
  ConstraintId id{};
  bool satisfied = true;
  // Index tuples locating each violation; layout depends on the constraint
  // (e.g. {dp} for C1, {from, to, channel} for C10).
  std::vector<std::vector<int>> violations;
  bool operator==(const ConstraintResult&) const = default;
};

struct ConstraintReport {
  std::array<ConstraintResult, kConstraintCount> entries;

  bool feasible() const noexcept;
  const ConstraintResult& operator[](ConstraintId id) const {
    return entries[static_cast<int>(id) - 1];
  }
  ConstraintResult& operator[](ConstraintId id) { return entries[static_cast<int>(id) - 1]; }
  bool operator==(const ConstraintReport&) const = default;
};

// Independent check of every model constraint. Infeasibility is reported,
// never thrown.
ConstraintReport check_constraints(const Solution& solution, const PlanningContext& context);

nlohmann::json report_to_json(const ConstraintReport& report);

}  // namespace meshplan

#endif  // MESHPLAN_CONSTRAINTS_HPP
