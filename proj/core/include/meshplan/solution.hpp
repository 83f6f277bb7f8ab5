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

#ifndef MESHPLAN_SOLUTION_HPP
#define MESHPLAN_SOLUTION_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "meshplan/binary_matrix.hpp"

namespace meshplan {

class PlanningContext;
struct PlanningInstance;

// One established radio link. Stored once, in the orientation it was created
// with; radio occupancy is counted at both endpoints.
struct Link {
  int from = 0;
  int to = 0;
  int channel = 0;
  auto operator<=>(const Link&) const = default;
};

// Directed flow f[from][to][channel] (Mb/s) over an established link.
struct LinkFlow {
  int from = 0;
  int to = 0;
  int channel = 0;
  double amount = 0.0;
  bool operator==(const LinkFlow&) const = default;
};

// Full variable assignment of a plan. Vectors are indexed by site, the
// assignment matrix is demand points x sites and channel_active is sites x
// channels. links and link_flows are kept sorted by (from, to, channel).
struct Solution {
  Solution() = default;
  Solution(int sites, int demand_points, int channels);
  explicit Solution(const PlanningContext& context);

  int site_count() const noexcept { return static_cast<int>(installed.size()); }
  int demand_count() const noexcept { return assignment.rows(); }
  int channel_count() const noexcept { return channel_active.cols(); }

  std::vector<std::uint8_t> installed;      // z
  std::vector<std::uint8_t> access_point;   // n
  std::vector<std::uint8_t> relay;          // r
  std::vector<std::uint8_t> gateway;        // g
  BinaryMatrix assignment;                  // x
  BinaryMatrix channel_active;              // w
  std::vector<Link> links;                  // L (nonzero entries)
  std::vector<LinkFlow> link_flows;         // f (nonzero entries)
  std::vector<double> uplink_flow;          // F

  void install_access_point(int site);
  void install_relay(int site);
  // Removes the node, its gateway flag, and every assignment to it.
  void uninstall(int site);

  int access_point_count() const noexcept;
  int relay_count() const noexcept;
  int gateway_count() const noexcept;
  int installed_count() const noexcept;

  // Site hosting each demand point, or -1.
  std::vector<int> hosts() const;
  // Sum of T_i x_ij per site.
  std::vector<double> site_demand(const PlanningInstance& instance) const;
  double assigned_demand(const PlanningInstance& instance) const;

  // Drops w, L, f and F.
  void clear_radio_layer();
  void clear_flows();
  void add_link(int from, int to, int channel);
  bool has_link(int from, int to, int channel) const;
  // f[from][to][channel]; 0 when absent.
  double flow(int from, int to, int channel) const;

  bool operator==(const Solution&) const = default;
};

nlohmann::json solution_to_json(const Solution& solution);
// Throws SchemaError on malformed input.
Solution solution_from_json(const nlohmann::json& document);

}  // namespace meshplan

#endif  // MESHPLAN_SOLUTION_HPP
