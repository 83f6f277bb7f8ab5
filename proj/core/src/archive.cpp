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

#include "meshplan/archive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "meshplan/errors.hpp"

namespace meshplan {

std::vector<double> crowding_distance(std::span<const ObjectiveVector> points) {
  const std::size_t m = points.size();
  std::vector<double> distance(m, 0.0);
  if (m == 0) return distance;
  const std::size_t dims = points.front().size();
  std::vector<std::size_t> order(m);
  for (std::size_t obj = 0; obj < dims; ++obj) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points[a][obj] < points[b][obj]; });
    const double lo = points[order.front()][obj];
    const double hi = points[order.back()][obj];
    distance[order.front()] = kInfiniteDistance;
    distance[order.back()] = kInfiniteDistance;
    if (hi == lo) continue;
    for (std::size_t t = 1; t + 1 < m; ++t) {
      distance[order[t]] += (points[order[t + 1]][obj] - points[order[t - 1]][obj]) / (hi - lo);
    }
  }
  return distance;
}

ParetoArchive::ParetoArchive(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw ParameterError("archive capacity must be positive");
}

bool ParetoArchive::update(ArchiveEntry candidate) {
  for (const auto& e : entries_) {
    if (e.objectives == candidate.objectives || dominates(e.objectives, candidate.objectives)) return false;
  }
  std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(candidate.objectives, e.objectives); });
  entries_.push_back(std::move(candidate));
  bool kept = true;
  if (entries_.size() > capacity_) {
    refresh_crowding();
    std::size_t victim = 0;
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      if (entries_[i].crowding_distance <= entries_[victim].crowding_distance) victim = i;
    }
    kept = victim != entries_.size() - 1;
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  refresh_crowding();
  return kept;
}

void ParetoArchive::refresh_crowding() {
  const auto points = objective_vectors();
  const auto distance = crowding_distance(points);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i].crowding_distance = distance[i];
}

void ParetoArchive::sort_by_crowding() {
  std::stable_sort(entries_.begin(), entries_.end(), [](const ArchiveEntry& a, const ArchiveEntry& b) {
    return a.crowding_distance > b.crowding_distance;
  });
}

std::vector<ObjectiveVector> ParetoArchive::objective_vectors() const {
  std::vector<ObjectiveVector> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.objectives);
  return out;
}

const ArchiveEntry& cheapest_solution(const ParetoArchive& archive) {
  if (archive.empty()) throw ParameterError("archive is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < archive.size(); ++i) {
    const auto& a = archive[i].raw;
    const auto& b = archive[best].raw;
    if (a.cost < b.cost || (a.cost == b.cost && a.coverage > b.coverage)) best = i;
  }
  return archive[best];
}

nlohmann::json archive_to_json(const ParetoArchive& archive, ModelVariant variant, CoverageMode mode) {
  using nlohmann::json;
  json doc;
  doc["variant"] = to_string(variant);
  doc["coverage_mode"] = to_string(mode);
  doc["capacity"] = archive.capacity();
  json entries = json::array();
  for (const auto& e : archive.entries()) {
    json item;
    item["objectives"] = std::vector<double>(e.objectives.values().begin(), e.objectives.values().end());
    item["raw"] = {{"cost", e.raw.cost},
                   {"coverage", e.raw.coverage},
                   {"link_residual", e.raw.link_residual},
                   {"gateway_balance", e.raw.gateway_balance}};
    // JSON has no infinity; boundary entries serialize as null.
    item["crowding_distance"] = std::isfinite(e.crowding_distance) ? json(e.crowding_distance) : json(nullptr);
    item["solution"] = solution_to_json(e.solution);
    entries.push_back(std::move(item));
  }
  doc["entries"] = std::move(entries);
  return doc;
}

}  // namespace meshplan
