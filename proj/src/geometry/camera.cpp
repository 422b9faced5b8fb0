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

#include "junction/geometry/camera.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "junction/common/error.hpp"

namespace junction::geometry {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

Mat3 CameraPose::rotation() const {
  const double cy = std::cos(yaw_rad), sy = std::sin(yaw_rad);
  const double cp = std::cos(pitch_rad), sp = std::sin(pitch_rad);
  const Vec3 forward(cp * cy, cp * sy, sp);
  // Level image axes before roll: right is horizontal, down completes the
  // right-handed triad (right x down = forward).
  const Vec3 right0(sy, -cy, 0.0);
  const Vec3 down0 = forward.cross(right0);
  const double cr = std::cos(roll_rad), sr = std::sin(roll_rad);
  Mat3 r;
  r.col(0) = cr * right0 + sr * down0;
  r.col(1) = -sr * right0 + cr * down0;
  r.col(2) = forward;
  return r;
}

Vec3 CameraPose::optical_axis() const {
  const double cp = std::cos(pitch_rad);
  return {cp * std::cos(yaw_rad), cp * std::sin(yaw_rad), std::sin(pitch_rad)};
}

CameraIntrinsics intrinsics_from_lens(double h_fov_deg, int width_px, int height_px) {
  if (!(h_fov_deg > 0.0 && h_fov_deg < 180.0)) {
    throw InvalidArgument("horizontal field of view must lie in (0, 180) degrees, got " +
                          std::to_string(h_fov_deg));
  }
  if (width_px <= 0 || height_px <= 0) {
    throw InvalidArgument("image size must be positive");
  }
  CameraIntrinsics intr;
  intr.width_px = width_px;
  intr.height_px = height_px;
  intr.fx_px = (width_px / 2.0) / std::tan(deg_to_rad(h_fov_deg) / 2.0);
  intr.fy_px = intr.fx_px;
  intr.cx_px = width_px / 2.0;
  intr.cy_px = height_px / 2.0;
  return intr;
}

double vertical_fov_deg(const CameraIntrinsics& intr) {
  return rad_to_deg(2.0 * std::atan((intr.height_px / 2.0) / intr.fy_px));
}

std::optional<Pixel> project(const CameraModel& cam, const Vec3& point_m) {
  const Vec3 pc = cam.pose.rotation().transpose() * (point_m - cam.pose.position_m);
  if (pc.z() <= 0.0) return std::nullopt;
  const auto& k = cam.intrinsics;
  return Pixel{k.fx_px * pc.x() / pc.z() + k.cx_px, k.fy_px * pc.y() / pc.z() + k.cy_px};
}

double depth_along_axis(const CameraModel& cam, const Vec3& point_m) {
  return cam.pose.optical_axis().dot(point_m - cam.pose.position_m);
}

bool inside_image(const CameraIntrinsics& intr, const Pixel& px) {
  return px.u >= 0.0 && px.u < intr.width_px && px.v >= 0.0 && px.v < intr.height_px;
}

Ray backproject(const CameraModel& cam, double u, double v) {
  const auto& k = cam.intrinsics;
  const Vec3 dc((u - k.cx_px) / k.fx_px, (v - k.cy_px) / k.fy_px, 1.0);
  return Ray{cam.pose.position_m, (cam.pose.rotation() * dc).normalized()};
}

}  // namespace junction::geometry
