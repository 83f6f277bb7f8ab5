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

#ifndef MESHPLAN_ARCHIVE_HPP
#define MESHPLAN_ARCHIVE_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "meshplan/objectives.hpp"
#include "meshplan/solution.hpp"

namespace meshplan {

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

// Crowding distance of each vector within the set. Boundary entries of every
// objective get infinity; a constant objective contributes nothing.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> points);

struct ArchiveEntry {
  Solution solution;
  ObjectiveVector objectives;
  RawObjectives raw;
  double crowding_distance = kInfiniteDistance;
  bool operator==(const ArchiveEntry&) const = default;
};

// Bounded set of mutually non-dominated solutions without duplicate
// objective vectors.
class ParetoArchive {
 public:
  explicit ParetoArchive(std::size_t capacity = 100);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::span<const ArchiveEntry> entries() const noexcept { return entries_; }
  const ArchiveEntry& operator[](std::size_t i) const { return entries_[i]; }

  // Returns true when the candidate was inserted. Dominated entries are
  // removed; on overflow the minimum-crowding entry is evicted (ties: higher
  // index).
  bool update(ArchiveEntry candidate);

  void refresh_crowding();
  // Stable sort, descending crowding distance.
  void sort_by_crowding();

  std::vector<ObjectiveVector> objective_vectors() const;

  bool operator==(const ParetoArchive&) const = default;

 private:
  std::size_t capacity_;
  std::vector<ArchiveEntry> entries_;
};

// Entry with minimum cost; ties prefer larger coverage, then lower index.
// Throws ParameterError on an empty archive.
const ArchiveEntry& cheapest_solution(const ParetoArchive& archive);

nlohmann::json archive_to_json(const ParetoArchive& archive, ModelVariant variant, CoverageMode mode);

}  // namespace meshplan

#endif  // MESHPLAN_ARCHIVE_HPP
