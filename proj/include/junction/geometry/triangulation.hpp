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

#include "junction/geometry/camera.hpp"

namespace junction::geometry {

/// Rays whose directions satisfy |sin(angle)| <= this are treated as parallel.
inline constexpr double kParallelSinThreshold = 1e-6;

struct MidpointResult {
  Vec3 point_m = Vec3::Zero();
  /// Length of the common perpendicular between the two rays.
  double gap_m = 0.0;
};

/// Midpoint of the common perpendicular of two rays. Throws DegenerateGeometry
/// for (near-)parallel rays.
MidpointResult triangulate_midpoint(const Ray& r1, const Ray& r2);

struct ViewObservation {
  CameraModel camera;
  Pixel pixel;
};

struct MultiViewResult {
  Vec3 point_m = Vec3::Zero();
  /// Root-mean-square reprojection error over views, pixels.
  double residual_px_rms = 0.0;
};

struct MultiViewOptions {
  /// Gauss-Newton passes on reprojection error after the linear solve.
  int refinement_passes = 1;
};

/// N-view triangulation: linear least squares on the ray constraints followed
/// by Gauss-Newton refinement of the pixel reprojection error. Throws
/// DegenerateGeometry for rank-deficient configurations (fewer than two
/// views, all rays parallel, or all rays sharing one origin).
MultiViewResult triangulate_multi(std::span<const ViewObservation> observations,
                                  const MultiViewOptions& options = {});

/// Reprojection RMS of `point_m` over the given views (pixels). Views with
/// the point behind the camera contribute an infinite error.
double reprojection_rms(std::span<const ViewObservation> observations, const Vec3& point_m);

/// Angle in [0, 180] degrees between the optical axes projected onto the
/// ground plane. Throws DegenerateGeometry when an axis is vertical.
double stereo_axis_angle(const CameraModel& a, const CameraModel& b);

}  // namespace junction::geometry
