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
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "junction/perception/tracker.hpp"

namespace junction::io {

inline constexpr int kTrajectoryFormatVersion = 1;

struct TrajectoryRecord {
  int track_id = 0;
  scene::ActorClass actor_class = scene::ActorClass::kPedestrian;
  std::int64_t trigger_utc_ns = 0;
  double x_m = 0.0;
  double y_m = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  int n_views = 0;
  std::map<std::string, Vec3> keypoints_m;

  bool operator==(const TrajectoryRecord&) const = default;
};

/// One record per history row, ordered by track id then time.
std::vector<TrajectoryRecord> trajectory_records(const std::vector<perception::Track>& tracks);

/// JSON Lines: a header object {"format": "junction-trajectories",
/// "version": 1}, then one canonical object per record.
std::string write_trajectories(const std::vector<TrajectoryRecord>& records);

/// Throws ParseError with the line number, UnsupportedVersion for another
/// version and SchemaViolation ("line N/field") for malformed records.
std::vector<TrajectoryRecord> read_trajectories(std::string_view text);

void save_trajectories(const std::vector<TrajectoryRecord>& records, const std::filesystem::path& path);
std::vector<TrajectoryRecord> load_trajectories(const std::filesystem::path& path);

}  // namespace junction::io
