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

#include "junction/coverage/stereo_pairs.hpp"

#include <algorithm>

#include "junction/common/error.hpp"
#include "junction/coverage/coverage.hpp"
#include "junction/geometry/triangulation.hpp"

namespace junction::coverage {

bool angle_in_window(double axis_angle_deg, const PairConstraints& c) {
  return axis_angle_deg >= c.angle_min_deg && axis_angle_deg <= c.angle_max_deg;
}

std::vector<StereoPairSpec> enumerate_stereo_pairs(std::span<const geometry::CameraModel> cameras,
                                                   std::span<const scene::Occluder> occluders,
                                                   const GridSpec& overlap_grid,
                                                   const PairConstraints& constraints) {
  std::vector<geometry::CameraModel> sorted(cameras.begin(), cameras.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

  const auto prisms = make_prisms(occluders);
  const double cell_area = overlap_grid.cell_m * overlap_grid.cell_m;
  std::vector<std::vector<std::uint8_t>> maps(sorted.size());

  std::vector<StereoPairSpec> pairs;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      double angle = 0.0;
      try {
        angle = geometry::stereo_axis_angle(sorted[i], sorted[j]);
      } catch (const DegenerateGeometry&) {
        continue;
      }
      if (!angle_in_window(angle, constraints)) continue;
      // Maps are built lazily: only cameras in some angle-valid pair need one.
      for (std::size_t k : {i, j}) {
        if (maps[k].empty()) maps[k] = visibility_map(sorted[k], prisms, overlap_grid);
      }
      std::size_t joint = 0;
      for (std::size_t c = 0; c < maps[i].size(); ++c) joint += maps[i][c] & maps[j][c];
      const double overlap = static_cast<double>(joint) * cell_area;
      if (joint == 0 || overlap < constraints.min_overlap_m2) continue;
      pairs.push_back({sorted[i].id, sorted[j].id, angle, overlap});
    }
  }
  return pairs;
}

std::vector<StereoPairSpec> enumerate_stereo_pairs(const scene::Scenario& s,
                                                   const PairConstraints& constraints) {
  return enumerate_stereo_pairs(s.cameras, s.occluders,
                                default_grid_spec(s, constraints.overlap_cell_m), constraints);
}

}  // namespace junction::coverage
