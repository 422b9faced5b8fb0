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

#include <string>
#include <vector>

#include "junction/coverage/stereo_pairs.hpp"
#include "junction/geometry/camera.hpp"
#include "junction/perception/detection.hpp"

namespace junction::perception {

/// Fundamental matrix F with x_b^T F x_a = 0 for homogeneous pixels of one
/// world point seen by cameras a and b.
geometry::Mat3 fundamental_matrix(const geometry::CameraModel& a, const geometry::CameraModel& b);

/// Distance in pixels from pixel `pb` in image b to the epipolar line of
/// pixel `pa` from image a.
double epipolar_distance(const geometry::Mat3& f, const geometry::Pixel& pa, const geometry::Pixel& pb);

struct StereoMatch {
  Detection2D a;
  Detection2D b;
  double epipolar_px = 0.0;
  /// Body part the pixels refer to; empty for the reference point.
  std::string part;
};

struct MatchResult {
  std::vector<StereoMatch> matches;
  std::vector<Detection2D> unmatched_a;
  std::vector<Detection2D> unmatched_b;
};

/// One-to-one assignment of detections of camera a to camera b minimizing
/// the summed epipolar distance. Pairs of different classes or with a
/// distance above gate_px are never matched. Throws InvalidArgument when the
/// detections do not share one trigger time or belong to other cameras.
MatchResult match_stereo(const std::vector<Detection2D>& a, const std::vector<Detection2D>& b,
                         const geometry::CameraModel& cam_a, const geometry::CameraModel& cam_b,
                         double gate_px);

/// Matches of the keypoints shared by both detections of a match, one per
/// name, with the keypoint pixels as centers.
std::vector<StereoMatch> keypoint_matches(const StereoMatch& m);

}  // namespace junction::perception
