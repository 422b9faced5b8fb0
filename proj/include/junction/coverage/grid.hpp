// Copyright 2026 The Junction Sim Authors
//
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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "junction/common/polygon.hpp"
#include "junction/scene/scenario.hpp"

namespace junction::coverage {

/// Reference height at which ground cells are evaluated (VRU torso).
inline constexpr double kReferenceHeightM = 1.0;
inline constexpr double kDefaultCellM = 0.25;
inline constexpr std::size_t kDefaultMaxCells = 16'000'000;

struct GridSpec {
  /// Lower-left corner of cell (0, 0).
  Vec2 origin_m = Vec2::Zero();
  double cell_m = kDefaultCellM;
  int cols = 0;
  int rows = 0;

  std::size_t cell_count() const { return static_cast<std::size_t>(cols) * rows; }
  Vec2 cell_center(int col, int row) const {
    return origin_m + Vec2((col + 0.5) * cell_m, (row + 0.5) * cell_m);
  }
  /// Cell containing a ground point, if inside the grid.
  std::optional<std::size_t> locate(const Vec2& p) const;
  Box2 extent() const {
    return {origin_m, origin_m + Vec2(cols * cell_m, rows * cell_m)};
  }
  bool operator==(const GridSpec& o) const {
    return origin_m == o.origin_m && cell_m == o.cell_m && cols == o.cols && rows == o.rows;
  }
};

/// Grid covering `region`, snapped outward to whole cells.
GridSpec grid_for_region(const Box2& region, double cell_m);

/// Grid over the scenario's bounds with a 5 m margin.
GridSpec default_grid_spec(const scene::Scenario& s, double cell_m = kDefaultCellM);

struct CellRecord {
  /// Bit (id - 1) set when camera `id` sees the cell center.
  std::uint64_t visible_mask = 0;
  std::uint8_t mono_count = 0;
  std::uint16_t stereo_pairs = 0;

  bool operator==(const CellRecord&) const = default;
};

struct CoverageGrid {
  GridSpec spec;
  /// Row-major, row 0 at the lowest y.
  std::vector<CellRecord> cells;

  const CellRecord& at(int col, int row) const {
    return cells[static_cast<std::size_t>(row) * spec.cols + col];
  }
  bool operator==(const CoverageGrid& o) const { return spec == o.spec && cells == o.cells; }
};

inline std::uint64_t camera_bit(int camera_id) { return std::uint64_t{1} << (camera_id - 1); }

}  // namespace junction::coverage
