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

#include <span>
#include <vector>

#include "junction/coverage/grid.hpp"
#include "junction/geometry/camera.hpp"
#include "junction/scene/scenario.hpp"

namespace junction::coverage {

struct PairConstraints {
  double angle_min_deg = 30.0;
  double angle_max_deg = 120.0;
  /// Jointly visible ground area needed for a usable stereo system.
  double min_overlap_m2 = 100.0;
  /// Overlap is measured on its own grid so pair validity does not depend on
  /// the resolution of any coverage grid.
  double overlap_cell_m = 1.0;
};

struct StereoPairSpec {
  int cam_a = 0;
  int cam_b = 0;
  double axis_angle_deg = 0.0;
  double overlap_m2 = 0.0;

  bool operator==(const StereoPairSpec&) const = default;
};

/// Unordered camera pairs whose axis angle lies inside the window and whose
/// joint visibility on `overlap_grid` (at the reference height) is positive
/// and at least min_overlap_m2. Sorted by (cam_a, cam_b); cam_a < cam_b.
/// Cameras with a vertical optical axis form no pairs.
std::vector<StereoPairSpec> enumerate_stereo_pairs(std::span<const geometry::CameraModel> cameras,
                                                   std::span<const scene::Occluder> occluders,
                                                   const GridSpec& overlap_grid,
                                                   const PairConstraints& constraints = {});

/// Same, with the overlap grid derived from the scenario bounds at
/// constraints.overlap_cell_m.
std::vector<StereoPairSpec> enumerate_stereo_pairs(const scene::Scenario& s,
                                                   const PairConstraints& constraints = {});

/// Axis-angle part of pair validity.
bool angle_in_window(double axis_angle_deg, const PairConstraints& c);

}  // namespace junction::coverage
