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

#ifndef MESHPLAN_INSTANCE_HPP
#define MESHPLAN_INSTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meshplan/binary_matrix.hpp"

namespace meshplan {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

double distance(Point a, Point b) noexcept;

struct DemandPoint {
  Point position;
  double traffic = 0.0;  // Mb/s
  bool operator==(const DemandPoint&) const = default;
};

// Per-link capacity override. Applies to the unordered site pair on one channel.
struct CapacityOverride {
  int from = 0;
  int to = 0;
  int channel = 0;
  double capacity = 0.0;
  bool operator==(const CapacityOverride&) const = default;
};

// Immutable description of one planning problem. Sites are indexed row-major
// over a rows x cols grid; channels are indexed 0..channels-1.
struct PlanningInstance {
  int rows = 0;
  int cols = 0;
  double spacing = 1.0;
  std::vector<Point> sites;
  std::vector<DemandPoint> demand_points;
  double coverage_radius = 1.0;
  double backbone_range = 1.0;
  int radios = 3;                     // R
  int channels = 11;                  // K
  double interface_capacity = 54.0;   // C_max
  std::vector<CapacityOverride> capacity_overrides;
  int hop_bound = 3;                  // A
  double big_m = 0.0;                 // M
  std::uint64_t seed = 0;
  // Present only for instances generated with seeded Bernoulli matrices.
  std::optional<BinaryMatrix> random_coverage;
  std::optional<BinaryMatrix> random_connectivity;

  int site_count() const noexcept { return static_cast<int>(sites.size()); }
  int demand_count() const noexcept { return static_cast<int>(demand_points.size()); }
  double total_demand() const noexcept;
  double max_traffic() const noexcept;

  // C_jl^k; symmetric in (from, to).
  double link_capacity(int from, int to, int channel) const;

  // Throws ParameterError on any violated invariant.
  void validate() const;

  bool operator==(const PlanningInstance&) const = default;
};

enum class SiteClass { Corner, Edge, Internal };

const char* to_string(SiteClass site_class) noexcept;

struct GridInstanceParams {
  int rows = 6;
  int cols = 6;
  double spacing = 1.0;
  int demand_points = 200;
  double traffic = 2.0;
  std::optional<double> coverage_radius;   // defaults to spacing
  std::optional<double> backbone_range;    // defaults to spacing
  int radios = 3;
  int channels = 11;
  double interface_capacity = 54.0;
  int hop_bound = 3;
  std::optional<double> big_m;             // defaults to n * max T_i
  std::optional<double> random_matrix_density;
  std::uint64_t seed = 1;
};

// Regular grid of candidate sites with uniformly scattered demand points.
PlanningInstance build_grid_instance(const GridInstanceParams& params);

// a_ij: demand point i lies within coverage_radius of site j.
class CoverageMatrix {
 public:
  CoverageMatrix() = default;
  explicit CoverageMatrix(BinaryMatrix bits) : bits_(std::move(bits)) {}
  bool covers(int dp, int site) const { return bits_(dp, site) != 0; }
  int demand_count() const noexcept { return bits_.rows(); }
  int site_count() const noexcept { return bits_.cols(); }
  const BinaryMatrix& bits() const noexcept { return bits_; }
  bool operator==(const CoverageMatrix&) const = default;

 private:
  BinaryMatrix bits_;
};

// b_jl: symmetric, zero diagonal.
class ConnectivityMatrix {
 public:
  ConnectivityMatrix() = default;
  explicit ConnectivityMatrix(BinaryMatrix bits) : bits_(std::move(bits)) {}
  bool connected(int a, int b) const { return bits_(a, b) != 0; }
  int site_count() const noexcept { return bits_.rows(); }
  const BinaryMatrix& bits() const noexcept { return bits_; }
  bool operator==(const ConnectivityMatrix&) const = default;

 private:
  BinaryMatrix bits_;
};

CoverageMatrix compute_coverage_matrix(const PlanningInstance& instance);
ConnectivityMatrix compute_connectivity_matrix(const PlanningInstance& instance);

// Boundary membership on the grid. Throws ParameterError for an invalid index.
SiteClass classify_site(const PlanningInstance& instance, int site);

// Orthogonal grid neighbours in north, east, south, west order.
std::vector<int> grid_neighbors(const PlanningInstance& instance, int site);

void save_instance(const PlanningInstance& instance, const std::filesystem::path& path);
PlanningInstance load_instance(const std::filesystem::path& path);

// Canonical serialized form and its FNV-1a hash; equal instances hash equal.
std::string instance_to_json_string(const PlanningInstance& instance);
PlanningInstance instance_from_json_string(const std::string& text);
std::uint64_t instance_hash(const PlanningInstance& instance);

// Instance together with every derived lookup the solvers need. Built once,
// then shared read-only.
class PlanningContext {
 public:
  explicit PlanningContext(PlanningInstance instance);

  const PlanningInstance& instance() const noexcept { return instance_; }
  const CoverageMatrix& coverage() const noexcept { return coverage_; }
  const ConnectivityMatrix& connectivity() const noexcept { return connectivity_; }

  int site_count() const noexcept { return instance_.site_count(); }
  int demand_count() const noexcept { return instance_.demand_count(); }
  int channel_count() const noexcept { return instance_.channels; }

  std::span<const int> covering_sites(int dp) const { return covering_sites_[dp]; }
  std::span<const int> covered_demand_points(int site) const { return covered_dps_[site]; }
  std::span<const int> backbone_neighbors(int site) const { return backbone_neighbors_[site]; }
  std::span<const int> grid_neighbors(int site) const { return grid_neighbors_[site]; }
  SiteClass site_class(int site) const { return site_classes_[site]; }

 private:
  PlanningInstance instance_;
  CoverageMatrix coverage_;
  ConnectivityMatrix connectivity_;
  std::vector<std::vector<int>> covering_sites_;
  std::vector<std::vector<int>> covered_dps_;
  std::vector<std::vector<int>> backbone_neighbors_;
  std::vector<std::vector<int>> grid_neighbors_;
  std::vector<SiteClass> site_classes_;
};

}  // namespace meshplan

#endif  // MESHPLAN_INSTANCE_HPP
