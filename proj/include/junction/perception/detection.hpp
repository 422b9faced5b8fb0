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
#include <string>
#include <vector>

#include "junction/geometry/camera.hpp"
#include "junction/scene/scenario.hpp"

namespace junction::perception {

struct Keypoint {
  std::string name;
  geometry::Pixel px;
};

struct Detection2D {
  int camera_id = 0;
  std::int64_t trigger_utc_ns = 0;
  geometry::Pixel center_px;
  double bbox_w_px = 1.0;
  double bbox_h_px = 1.0;
  std::vector<Keypoint> keypoints;
  scene::ActorClass actor_class = scene::ActorClass::kPedestrian;
  /// Ground-truth link for evaluation; empty for false positives.
  std::optional<int> truth_actor_id;
};

struct NoiseConfig {
  double sigma_px = 0.0;
  double miss_base = 0.0;
  /// A detection is missed when more than this fraction of its silhouette
  /// samples is hidden.
  double occlusion_miss_threshold = 0.5;
  /// Poisson mean of uniformly placed false positives per frame.
  double fp_rate_per_frame = 0.0;
  std::uint64_t seed = 0;
  /// Emit head, pelvis and feet keypoints for VRUs.
  bool keypoints = false;
};

/// Throws InvalidArgument unless probabilities lie in [0, 1] and the noise
/// and rate are non-negative.
void validate_noise(const NoiseConfig& noise);

/// Names of the keypoints emitted for VRUs, in emission order.
const std::vector<std::string>& keypoint_names();

/// World position of a named keypoint of an actor at a pose.
Vec3 keypoint_position(const scene::Actor& actor, const scene::ActorPose& pose, const std::string& name);

/// Fraction of nine silhouette samples (three heights by three lateral
/// offsets across the line of sight) whose sight segment is blocked by a
/// static occluder or another actor.
double occluded_fraction(const scene::Scenario& s, const geometry::CameraModel& cam,
                         const scene::Actor& actor, double t_s);

/// Synthetic detector. An actor is detected when its reference point is
/// visible, its range is within the weather visibility, its occluded
/// fraction does not exceed the threshold, and the miss draw does not fire.
/// Detections are ordered by actor id, followed by false positives.
/// Deterministic in (scenario seed, noise seed, camera id, trigger time).
std::vector<Detection2D> synth_detect(const scene::Scenario& s, const geometry::CameraModel& cam,
                                      double t_s, const NoiseConfig& noise);

/// Same, stamping detections with an explicit trigger time.
std::vector<Detection2D> synth_detect(const scene::Scenario& s, const geometry::CameraModel& cam,
                                      double t_s, std::int64_t trigger_utc_ns,
                                      const NoiseConfig& noise);

}  // namespace junction::perception
