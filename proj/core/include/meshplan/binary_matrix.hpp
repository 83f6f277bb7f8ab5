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

#ifndef MESHPLAN_BINARY_MATRIX_HPP
#define MESHPLAN_BINARY_MATRIX_HPP

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace meshplan {

// Dense row-major matrix of 0/1 cells. Cells are bytes so that out-of-domain
// values loaded from files stay observable to the constraint checker.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(int rows, int cols) : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * cols, 0) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  std::uint8_t operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::uint8_t& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }

  std::span<const std::uint8_t> row(int r) const {
    return {cells_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }

  void clear_row(int r) {
    for (int c = 0; c < cols_; ++c) (*this)(r, c) = 0;
  }
  void clear_col(int c) {
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = 0;
  }
  void fill(std::uint8_t value) { cells_.assign(cells_.size(), value); }

  std::size_t count_ones() const {
    std::size_t total = 0;
    for (auto cell : cells_) total += cell != 0;
    return total;
  }

  std::span<const std::uint8_t> cells() const noexcept { return cells_; }

  bool operator==(const BinaryMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

}  // namespace meshplan

#endif  // MESHPLAN_BINARY_MATRIX_HPP
