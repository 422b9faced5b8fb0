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

#include "junction/coverage/report.hpp"

#include <cmath>

#include "junction/common/error.hpp"

namespace junction::coverage {

namespace {

std::vector<std::size_t> cells_in_polygon(const GridSpec& spec, const Polygon2& poly) {
  std::vector<std::size_t> out;
  if (poly.size() < 3) return out;
  const Box2 box = bounding_box(poly);
  const int c0 = std::max(0, static_cast<int>(std::floor((box.min.x() - spec.origin_m.x()) / spec.cell_m)));
  const int r0 = std::max(0, static_cast<int>(std::floor((box.min.y() - spec.origin_m.y()) / spec.cell_m)));
  const int c1 = std::min(spec.cols - 1, static_cast<int>(std::floor((box.max.x() - spec.origin_m.x()) / spec.cell_m)));
  const int r1 = std::min(spec.rows - 1, static_cast<int>(std::floor((box.max.y() - spec.origin_m.y()) / spec.cell_m)));
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      if (point_in_polygon(spec.cell_center(c, r), poly)) {
        out.push_back(static_cast<std::size_t>(r) * spec.cols + c);
      }
    }
  }
  return out;
}

double stereo_fraction(const CoverageGrid& grid, const std::vector<std::size_t>& cells) {
  if (cells.empty()) return 0.0;
  std::size_t covered = 0;
  for (auto i : cells) covered += grid.cells[i].stereo_pairs >= 1 ? 1 : 0;
  return static_cast<double>(covered) / static_cast<double>(cells.size());
}

}  // namespace

ReportIndex::ReportIndex(const GridSpec& spec, const scene::JunctionLayout& layout) : spec_(spec) {
  if (!layout.roi_inner.empty() && !spec.extent().contains(bounding_box(layout.roi_inner))) {
    throw InvalidArgument("coverage grid does not contain the inner junction region");
  }
  inner_cells_ = cells_in_polygon(spec, layout.roi_inner);
  for (const auto& cw : layout.crosswalks) {
    crosswalk_cells_.emplace_back(cw.index, cells_in_polygon(spec, cw.polygon));
  }
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const Vec2 p = spec.cell_center(c, r);
      for (const auto& lane : layout.lanes) {
        if (lane.kind != scene::LaneKind::kBicycle) continue;
        if (distance_to_polyline(p, lane.centerline) <= 0.5 * lane.width_m) {
          bicycle_cells_.push_back(static_cast<std::size_t>(r) * spec.cols + c);
          break;
        }
      }
    }
  }
  for (const auto& a : layout.approaches) {
    ApproachSamples samples;
    samples.direction = a.direction;
    samples.length_m = std::min(a.length_m, polyline_length(a.polyline));
    samples.step_m = 0.5 * spec.cell_m;
    const auto n = static_cast<long long>(std::floor(samples.length_m / samples.step_m));
    for (long long k = 0; k <= n; ++k) {
      const auto cell = spec.locate(polyline_point_at(a.polyline, k * samples.step_m));
      samples.cells.push_back(cell ? static_cast<long long>(*cell) : -1);
    }
    approaches_.push_back(std::move(samples));
  }
}

CoverageMetrics ReportIndex::evaluate(const CoverageGrid& grid) const {
  if (!(grid.spec == spec_)) throw InvalidArgument("grid does not match the report index");
  CoverageMetrics m;
  m.stereo_fraction_inner = stereo_fraction(grid, inner_cells_);
  for (const auto& [index, cells] : crosswalk_cells_) {
    m.crosswalks.push_back({index, stereo_fraction(grid, cells), cells.size()});
  }
  m.bicycle_lane_stereo_fraction = stereo_fraction(grid, bicycle_cells_);
  for (const auto& a : approaches_) {
    ApproachMetric am{a.direction, 0.0, a.length_m};
    for (std::size_t k = 0; k < a.cells.size(); ++k) {
      const long long cell = a.cells[k];
      if (cell < 0 || grid.cells[static_cast<std::size_t>(cell)].mono_count == 0) break;
      am.covered_m = std::min(a.length_m, static_cast<double>(k) * a.step_m);
    }
    m.approaches.push_back(std::move(am));
  }
  return m;
}

CoverageMetrics coverage_report(const CoverageGrid& grid, const scene::JunctionLayout& layout) {
  if (grid.cells.size() != grid.spec.cell_count()) {
    throw InvalidArgument("grid cell count does not match its spec");
  }
  return ReportIndex(grid.spec, layout).evaluate(grid);
}

}  // namespace junction::coverage
