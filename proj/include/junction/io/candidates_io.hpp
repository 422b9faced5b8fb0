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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "junction/coverage/placement.hpp"

namespace junction::io {

inline constexpr int kCandidatesFormatVersion = 1;

/// Candidate mounts plus the shared camera and search settings.
struct CandidateSet {
  std::vector<coverage::PlacementCandidate> candidates;
  double h_fov_deg = 71.0;
  int width_px = 4096;
  int height_px = 2160;
  double max_range_m = 120.0;
  double yaw_step_deg = 5.0;
  int yaw_steps = 8;
};

/// {"schema_version": 1, "camera": {...}, "search": {...},
///  "candidates": [{"pole_id", "position_m", "height_m", "yaw_deg",
///  "pitch_deg"}]}; "camera" and "search" are optional on read.
std::string write_candidates(const CandidateSet& set);
CandidateSet read_candidates(std::string_view text);
CandidateSet load_candidates(const std::filesystem::path& path);

/// Placement options derived from the set.
coverage::PlacementOptions placement_options(const CandidateSet& set);

}  // namespace junction::io
