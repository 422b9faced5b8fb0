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

#include <Eigen/Dense>
#include <optional>

#include "junction/common/polygon.hpp"

namespace junction::geometry {

using Mat3 = Eigen::Matrix3d;

double deg_to_rad(double deg);
double rad_to_deg(double rad);

struct CameraIntrinsics {
  int width_px = 0;
  int height_px = 0;
  double fx_px = 0.0;
  double fy_px = 0.0;
  double cx_px = 0.0;
  double cy_px = 0.0;

  bool operator==(const CameraIntrinsics&) const = default;
};

/// World frame: z up, meters, origin at the junction center, x along the main
/// road. Yaw is measured counter-clockwise from +x, positive pitch tilts the
/// optical axis up, roll turns the image about the optical axis.
struct CameraPose {
  Vec3 position_m = Vec3::Zero();
  double yaw_rad = 0.0;
  double pitch_rad = 0.0;
  double roll_rad = 0.0;

  bool operator==(const CameraPose&) const = default;

  /// Camera-to-world rotation. Columns are the image-right, image-down and
  /// optical-axis directions expressed in the world frame.
  Mat3 rotation() const;
  Vec3 optical_axis() const;
};

struct CameraModel {
  int id = 0;
  CameraIntrinsics intrinsics;
  CameraPose pose;
  double max_range_m = 100.0;

  bool operator==(const CameraModel&) const = default;
};

struct Ray {
  Vec3 origin_m = Vec3::Zero();
  Vec3 direction = Vec3::UnitX();  // unit length
};

struct Pixel {
  double u = 0.0;
  double v = 0.0;
};

/// Square-pixel pinhole intrinsics with the principal point at the image
/// center. Throws InvalidArgument unless 0 < h_fov_deg < 180 and the image
/// size is positive.
CameraIntrinsics intrinsics_from_lens(double h_fov_deg, int width_px, int height_px);

/// Vertical field of view implied by the intrinsics, degrees.
double vertical_fov_deg(const CameraIntrinsics& intr);

/// Pixel of a world point, or std::nullopt when the point has non-positive
/// depth along the optical axis. The pixel may lie outside the image.
std::optional<Pixel> project(const CameraModel& cam, const Vec3& point_m);

/// Depth of a world point along the camera's optical axis.
double depth_along_axis(const CameraModel& cam, const Vec3& point_m);

bool inside_image(const CameraIntrinsics& intr, const Pixel& px);

Ray backproject(const CameraModel& cam, double u, double v);

}  // namespace junction::geometry
