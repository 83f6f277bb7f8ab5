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

#include "meshplan/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "meshplan/errors.hpp"
#include "meshplan/rng.hpp"

namespace meshplan {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

bool same_pair(const CapacityOverride& o, int from, int to, int channel) {
  return o.channel == channel && ((o.from == from && o.to == to) || (o.from == to && o.to == from));
}

}  // namespace

double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

double PlanningInstance::total_demand() const noexcept {
  double total = 0.0;
  for (const auto& dp : demand_points) total += dp.traffic;
  return total;
}

double PlanningInstance::max_traffic() const noexcept {
  double best = 0.0;
  for (const auto& dp : demand_points) best = std::max(best, dp.traffic);
  return best;
}

double PlanningInstance::link_capacity(int from, int to, int channel) const {
  for (const auto& o : capacity_overrides) {
    if (same_pair(o, from, to, channel)) return o.capacity;
  }
  return interface_capacity;
}

void PlanningInstance::validate() const {
  require(rows >= 1 && cols >= 1, "grid dimensions must be positive");
  require(site_count() == rows * cols, "site count must equal rows x cols");
  require(std::isfinite(spacing) && spacing > 0.0, "spacing must be positive");
  require(radios >= 1, "R must be at least 1");
  require(channels > radios, "K must exceed R (got K=" + std::to_string(channels) +
                                 ", R=" + std::to_string(radios) + ")");
  require(std::isfinite(interface_capacity) && interface_capacity > 0.0, "C_max must be positive");
  require(hop_bound >= 1, "A must be at least 1");
  require(std::isfinite(coverage_radius) && coverage_radius > 0.0, "coverage radius must be positive");
  require(std::isfinite(backbone_range) && backbone_range > 0.0, "backbone range must be positive");
  for (std::size_t i = 0; i < demand_points.size(); ++i) {
    const double t = demand_points[i].traffic;
    require(std::isfinite(t) && t > 0.0, "traffic of demand point " + std::to_string(i) + " must be positive");
  }
  require(std::isfinite(big_m) && big_m + 1e-9 >= total_demand(), "M must be at least the total demand");
  for (const auto& o : capacity_overrides) {
    require(o.from >= 0 && o.from < site_count() && o.to >= 0 && o.to < site_count() && o.from != o.to,
            "capacity override references an invalid site pair");
    require(o.channel >= 0 && o.channel < channels, "capacity override references an invalid channel");
    require(std::isfinite(o.capacity) && o.capacity >= 0.0, "capacity override must be non-negative");
  }
  if (random_coverage) {
    require(random_coverage->rows() == demand_count() && random_coverage->cols() == site_count(),
            "coverage matrix has wrong shape");
  }
  if (random_connectivity) {
    const auto& b = *random_connectivity;
    require(b.rows() == site_count() && b.cols() == site_count(), "connectivity matrix has wrong shape");
    for (int j = 0; j < site_count(); ++j) {
      require(b(j, j) == 0, "connectivity matrix must have a zero diagonal");
      for (int l = 0; l < j; ++l) require(b(j, l) == b(l, j), "connectivity matrix must be symmetric");
    }
  }
}

const char* to_string(SiteClass site_class) noexcept {
  switch (site_class) {
    case SiteClass::Corner: return "corner";
    case SiteClass::Edge: return "edge";
    case SiteClass::Internal: return "internal";
  }
  return "?";
}

PlanningInstance build_grid_instance(const GridInstanceParams& params) {
  require(params.rows >= 2 && params.cols >= 2, "grid must be at least 2x2");
  require(params.demand_points >= 1, "at least one demand point is required");
  require(params.channels > params.radios, "K must exceed R (got K=" + std::to_string(params.channels) +
                                               ", R=" + std::to_string(params.radios) + ")");
  require(std::isfinite(params.traffic) && params.traffic > 0.0, "traffic must be positive");
  if (params.random_matrix_density) {
    const double d = *params.random_matrix_density;
    require(d >= 0.0 && d <= 1.0, "random matrix density must lie in [0, 1]");
  }

  PlanningInstance inst;
  inst.rows = params.rows;
  inst.cols = params.cols;
  inst.spacing = params.spacing;
  inst.coverage_radius = params.coverage_radius.value_or(params.spacing);
  inst.backbone_range = params.backbone_range.value_or(params.spacing);
  inst.radios = params.radios;
  inst.channels = params.channels;
  inst.interface_capacity = params.interface_capacity;
  inst.hop_bound = params.hop_bound;
  inst.seed = params.seed;

  inst.sites.reserve(static_cast<std::size_t>(params.rows) * params.cols);
  for (int r = 0; r < params.rows; ++r) {
    for (int c = 0; c < params.cols; ++c) inst.sites.push_back({c * params.spacing, r * params.spacing});
  }

  const double width = (params.cols - 1) * params.spacing;
  const double height = (params.rows - 1) * params.spacing;
  Rng rng = Rng::stream(params.seed, 0x1d);
  inst.demand_points.reserve(params.demand_points);
  for (int i = 0; i < params.demand_points; ++i) {
    const double x = rng.uniform_real(0.0, width);
    const double y = rng.uniform_real(0.0, height);
    inst.demand_points.push_back({{x, y}, params.traffic});
  }
  inst.big_m = params.big_m.value_or(inst.demand_count() * inst.max_traffic());

  if (params.random_matrix_density) {
    const double density = *params.random_matrix_density;
    Rng mrng = Rng::stream(params.seed, 0x2e);
    BinaryMatrix a(inst.demand_count(), inst.site_count());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) a(i, j) = mrng.bernoulli(density) ? 1 : 0;
    }
    BinaryMatrix b(inst.site_count(), inst.site_count());
    for (int j = 0; j < b.rows(); ++j) {
      for (int l = j + 1; l < b.cols(); ++l) b(j, l) = b(l, j) = mrng.bernoulli(density) ? 1 : 0;
    }
    inst.random_coverage = std::move(a);
    inst.random_connectivity = std::move(b);
  }

  inst.validate();
  return inst;
}

CoverageMatrix compute_coverage_matrix(const PlanningInstance& instance) {
  if (instance.random_coverage) return CoverageMatrix(*instance.random_coverage);
  BinaryMatrix a(instance.demand_count(), instance.site_count());
  for (int i = 0; i < instance.demand_count(); ++i) {
    for (int j = 0; j < instance.site_count(); ++j) {
      a(i, j) = distance(instance.demand_points[i].position, instance.sites[j]) <= instance.coverage_radius;
    }
  }
  return CoverageMatrix(std::move(a));
}

ConnectivityMatrix compute_connectivity_matrix(const PlanningInstance& instance) {
  if (instance.random_connectivity) return ConnectivityMatrix(*instance.random_connectivity);
  const int s = instance.site_count();
  BinaryMatrix b(s, s);
  for (int j = 0; j < s; ++j) {
    for (int l = j + 1; l < s; ++l) {
      // A small relative slack keeps sqrt(2)-spaced diagonals in range when the
      // range is given as spacing * sqrt(2).
      const bool linked = distance(instance.sites[j], instance.sites[l]) <= instance.backbone_range * (1.0 + 1e-12);
      b(j, l) = b(l, j) = linked;
    }
  }
  return ConnectivityMatrix(std::move(b));
}

SiteClass classify_site(const PlanningInstance& instance, int site) {
  if (site < 0 || site >= instance.site_count()) {
    throw ParameterError("site index " + std::to_string(site) + " out of range");
  }
  const int r = site / instance.cols;
  const int c = site % instance.cols;
  const bool row_boundary = r == 0 || r == instance.rows - 1;
  const bool col_boundary = c == 0 || c == instance.cols - 1;
  if (row_boundary && col_boundary) return SiteClass::Corner;
  if (row_boundary || col_boundary) return SiteClass::Edge;
  return SiteClass::Internal;
}

std::vector<int> grid_neighbors(const PlanningInstance& instance, int site) {
  const int r = site / instance.cols;
  const int c = site % instance.cols;
  std::vector<int> out;
  if (r > 0) out.push_back(site - instance.cols);
  if (c + 1 < instance.cols) out.push_back(site + 1);
  if (r + 1 < instance.rows) out.push_back(site + instance.cols);
  if (c > 0) out.push_back(site - 1);
  return out;
}

PlanningContext::PlanningContext(PlanningInstance instance)
    : instance_((instance.validate(), std::move(instance))),
      coverage_(compute_coverage_matrix(instance_)),
      connectivity_(compute_connectivity_matrix(instance_)) {
  const int s = instance_.site_count();
  const int n = instance_.demand_count();
  covering_sites_.resize(n);
  covered_dps_.resize(s);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < s; ++j) {
      if (coverage_.covers(i, j)) {
        covering_sites_[i].push_back(j);
        covered_dps_[j].push_back(i);
      }
    }
  }
  backbone_neighbors_.resize(s);
  grid_neighbors_.resize(s);
  site_classes_.resize(s);
  for (int j = 0; j < s; ++j) {
    for (int l = 0; l < s; ++l) {
      if (connectivity_.connected(j, l)) backbone_neighbors_[j].push_back(l);
    }
    grid_neighbors_[j] = meshplan::grid_neighbors(instance_, j);
    site_classes_[j] = classify_site(instance_, j);
  }
}

}  // namespace meshplan
