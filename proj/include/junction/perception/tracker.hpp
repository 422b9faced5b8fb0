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
#include <span>
#include <string>
#include <vector>

#include "junction/perception/observation.hpp"

namespace junction::perception {

struct TrackerConfig {
  /// White-acceleration process noise, m/s^2.
  double sigma_a = 2.0;
  /// Mahalanobis gate on the position innovation.
  double gate = 3.0;
  int confirm_hits = 3;
  /// Consecutive misses after which a confirmed track is deleted.
  int max_misses = 25;
  /// Prior velocity standard deviation of a new track, m/s.
  double init_velocity_sd = 5.0;
  /// Measurement noise is n_views times the fused covariance, the
  /// equal-weight covariance-intersection bound for stereo systems that
  /// share cameras. False uses the fused covariance as is.
  bool correlation_safe = true;
};

struct TrackRow {
  std::int64_t trigger_utc_ns = 0;
  double x_m = 0.0;
  double y_m = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  /// Stereo systems behind the update; 0 when the track coasted.
  int n_views = 0;
  std::map<std::string, Vec3> keypoints_m;
  /// Trace of the posterior position covariance, m^2.
  double position_var_m2 = 0.0;
  /// Ground-truth actor behind the row, for evaluation only.
  std::optional<int> truth_actor_id;

  bool operator==(const TrackRow&) const = default;
};

struct Track {
  int id = 0;
  scene::ActorClass actor_class = scene::ActorClass::kPedestrian;
  /// (x, y, vx, vy).
  Eigen::Vector4d state = Eigen::Vector4d::Zero();
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Identity();
  int age_frames = 0;
  int hits = 0;
  int misses_in_row = 0;
  bool confirmed = false;
  std::vector<TrackRow> history;
  /// Ground-truth actor of the most recent update, for evaluation.
  std::optional<int> truth_actor_id;
};

/// Constant-velocity predict, optimal assignment under the Mahalanobis gate,
/// Kalman update of matched tracks, coasting of unmatched ones. Unmatched
/// observations open tentative tracks with ids from next_id. Tentative
/// tracks are dropped at their first miss, confirmed tracks after
/// max_misses consecutive misses. Returns the surviving tracks; deleted
/// confirmed tracks are appended to `retired` when given.
std::vector<Track> track_step(std::vector<Track> tracks, std::span<const Observation3D> fused,
                              double dt_s, std::int64_t trigger_utc_ns, const TrackerConfig& config,
                              int& next_id, std::vector<Track>* retired = nullptr);

/// Stateful wrapper that keeps the id counter and retired tracks.
class Tracker {
 public:
  explicit Tracker(TrackerConfig config = {}) : config_(config) {}

  /// Advances to trigger_utc_ns; the first call only opens tracks.
  void step(std::span<const Observation3D> fused, std::int64_t trigger_utc_ns);

  const std::vector<Track>& active() const { return active_; }
  /// Every track ever confirmed (active or retired), ordered by id.
  std::vector<Track> confirmed_tracks() const;

 private:
  TrackerConfig config_;
  std::vector<Track> active_;
  std::vector<Track> retired_;
  int next_id_ = 1;
  std::optional<std::int64_t> last_ns_;
};

}  // namespace junction::perception
