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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "junction/coverage/stereo_pairs.hpp"
#include "junction/perception/stereo_matching.hpp"
#include "junction/scene/scenario.hpp"

namespace junction::perception {

using Mat3 = Eigen::Matrix3d;

struct Observation3D {
  Vec3 position_m = Vec3::Zero();
  Mat3 covariance_m2 = Mat3::Zero();
  /// Producing stereo system; both ids are 0 for a fused estimate.
  coverage::StereoPairSpec pair;
  std::int64_t trigger_utc_ns = 0;
  scene::ActorClass actor_class = scene::ActorClass::kPedestrian;
  double gap_m = 0.0;
  /// Number of stereo systems contributing.
  int n_views = 1;
  std::string part;
  std::optional<int> truth_actor_id;
  /// Fused keypoint positions by name, filled by the perception chain.
  std::map<std::string, Vec3> keypoints_m;
};

struct ObserveOptions {
  /// Pixel noise assumed for covariance propagation.
  double sigma_px = 0.5;
  /// Floor on sigma_px so noiseless runs keep invertible covariances.
  double min_sigma_px = 1e-3;
  double gap_limit_m = 0.5;
};

/// Midpoint triangulation of each match with first-order covariance
/// sigma^2 J J^T, J the numeric Jacobian of the midpoint with respect to the
/// four pixel coordinates. Matches whose rays miss by more than gap_limit_m
/// are dropped. Throws DegenerateGeometry for parallel rays.
std::vector<Observation3D> observe(const std::vector<StereoMatch>& matches,
                                   const geometry::CameraModel& cam_a,
                                   const geometry::CameraModel& cam_b,
                                   const coverage::StereoPairSpec& pair,
                                   const ObserveOptions& options = {});

}  // namespace junction::perception
