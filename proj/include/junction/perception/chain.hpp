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
#include <vector>

#include "junction/perception/detection.hpp"
#include "junction/perception/fusion.hpp"
#include "junction/perception/observation.hpp"
#include "junction/perception/tracker.hpp"

namespace junction::perception {

struct PerceptionConfig {
  NoiseConfig noise;
  /// Epipolar gate for stereo matching, px.
  double match_gate_px = 10.0;
  /// sigma_px is overridden by noise.sigma_px.
  ObserveOptions observe;
  FusionOptions fusion;
  TrackerConfig tracker;
  /// Stereo systems to use; enumerated from the scenario when empty.
  std::optional<std::vector<coverage::StereoPairSpec>> pairs;
  /// Processed span; the scenario duration when empty.
  std::optional<double> duration_s;
  std::int64_t start_utc_ns = 0;
  /// Whether camera `id` delivered a frame at a trigger; all frames when
  /// empty. Lets recordings with drops feed the chain.
  std::function<bool(int, std::int64_t)> frame_available;
};

struct AccuracyReport {
  /// Rows of confirmed tracks compared against the actor they follow.
  std::size_t rows_evaluated = 0;
  double max_error_m = 0.0;
  double rmse_m = 0.0;
  /// sqrt of the mean posterior position variance over evaluated rows.
  double predicted_rmse_m = 0.0;
  std::size_t confirmed_tracks = 0;
  std::size_t actors_tracked = 0;
};

struct PerceptionResult {
  std::vector<coverage::StereoPairSpec> pairs;
  std::size_t frames = 0;
  std::size_t detections = 0;
  std::size_t observations = 0;
  std::size_t fused = 0;
  /// Confirmed tracks ordered by id.
  std::vector<Track> tracks;
  AccuracyReport accuracy;
};

/// Observations of one trigger: detection per camera, matching and
/// triangulation per stereo system, with keypoints triangulated through the
/// same observe() call per match.
std::vector<Observation3D> observe_frame(const scene::Scenario& s,
                                         const std::vector<coverage::StereoPairSpec>& pairs,
                                         double t_s, std::int64_t trigger_utc_ns,
                                         const PerceptionConfig& config,
                                         std::size_t* detection_count = nullptr);

/// Fuses observations and, per fused estimate, the keypoints of the
/// contributing observations by name.
std::vector<Observation3D> fuse_with_keypoints(const std::vector<Observation3D>& obs,
                                               const FusionOptions& options);

/// Runs detection, matching, triangulation, fusion and tracking over every
/// trigger and scores the confirmed tracks against ground truth.
PerceptionResult run_perception(const scene::Scenario& s, const PerceptionConfig& config = {});

/// Scores confirmed tracks: each row against the pose of the row's truth
/// actor at the row time; rows without a truth link or outside the actor's
/// lifetime are skipped.
AccuracyReport score_tracks(const scene::Scenario& s, const std::vector<Track>& tracks,
                            std::int64_t start_utc_ns);

}  // namespace junction::perception
