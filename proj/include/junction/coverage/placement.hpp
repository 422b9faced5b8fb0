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
#include <optional>
#include <span>
#include <vector>

#include "junction/coverage/grid.hpp"
#include "junction/coverage/report.hpp"
#include "junction/coverage/stereo_pairs.hpp"
#include "junction/geometry/camera.hpp"
#include "junction/scene/scenario.hpp"

namespace junction::coverage {

/// A mounting option on an existing pole.
struct PlacementCandidate {
  int pole_id = 0;
  Vec2 position_m = Vec2::Zero();
  double height_m = 6.0;
  double yaw_rad = 0.0;
  double pitch_rad = 0.0;

  bool operator==(const PlacementCandidate&) const = default;
};

struct ObjectiveWeights {
  double stereo_inner = 1.0;
  /// Applied to the mean per-crosswalk stereo fraction.
  double crosswalk = 1.0;
  /// Applied to the mean of covered_m / length_m over approaches.
  double approach = 1.0;
  double bicycle_lane = 0.0;
};

double objective_value(const CoverageMetrics& m, const ObjectiveWeights& w);

struct PlacementOptions {
  /// Intrinsics and range shared by every placed camera.
  geometry::CameraIntrinsics intrinsics;
  double max_range_m = 120.0;
  PairConstraints constraints;
  /// Evaluation grid; defaults to the scenario grid at the overlap cell size.
  std::optional<GridSpec> grid;
  double yaw_step_deg = 5.0;
  /// Yaw values per candidate: offsets step * (k - (yaw_steps - 1) / 2) for
  /// k in [0, yaw_steps), integer division.
  int yaw_steps = 8;
  /// Extra local-search starts from seeded random selections.
  int restarts = 4;
  std::uint64_t seed = 0;
  bool installation_limits = false;
};

struct PlacementResult {
  std::vector<int> candidate_indices;
  /// Selected candidates with their optimized yaw.
  std::vector<PlacementCandidate> selected;
  CoverageMetrics metrics;
  double objective = 0.0;
  double greedy_objective = 0.0;
};

/// Camera model for a candidate at a yaw offset. Camera ids are assigned by
/// the caller.
geometry::CameraModel candidate_camera(const PlacementCandidate& c, int id,
                                       const PlacementOptions& options);

/// Yaw offsets (radians) explored for every candidate.
std::vector<double> yaw_offsets(const PlacementOptions& options);

/// Greedy seeding followed by local search over single-slot reassignments
/// (swap a selected candidate for an unselected one, or move its yaw to any
/// grid value) and pair reassignments, repeated until no move improves.
/// Deterministic for a given seed. Throws InvalidArgument when fewer than
/// n_cameras candidates are given and Infeasible when no candidate sees the
/// inner region at any yaw.
PlacementResult optimize_placement(const scene::Scenario& s,
                                   std::span<const PlacementCandidate> candidates, int n_cameras,
                                   const ObjectiveWeights& weights,
                                   const PlacementOptions& options);

/// Scenario with its cameras replaced by the selection (ids 1..n in order).
scene::Scenario apply_placement(const scene::Scenario& s, const PlacementResult& result,
                                const PlacementOptions& options);

}  // namespace junction::coverage
