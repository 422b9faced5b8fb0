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

#include "junction/perception/stereo_matching.hpp"

#include <cmath>

#include "junction/common/assignment.hpp"
#include "junction/common/error.hpp"

namespace junction::perception {

namespace {

geometry::Mat3 intrinsic_matrix(const geometry::CameraIntrinsics& k) {
  geometry::Mat3 m;
  m << k.fx_px, 0.0, k.cx_px, 0.0, k.fy_px, k.cy_px, 0.0, 0.0, 1.0;
  return m;
}

geometry::Mat3 skew(const Vec3& t) {
  geometry::Mat3 m;
  m << 0.0, -t.z(), t.y(), t.z(), 0.0, -t.x(), -t.y(), t.x(), 0.0;
  return m;
}

}  // namespace

geometry::Mat3 fundamental_matrix(const geometry::CameraModel& a, const geometry::CameraModel& b) {
  const geometry::Mat3 ra = a.pose.rotation();
  const geometry::Mat3 rb = b.pose.rotation();
  const geometry::Mat3 r = rb.transpose() * ra;
  const Vec3 t = rb.transpose() * (a.pose.position_m - b.pose.position_m);
  const geometry::Mat3 e = skew(t) * r;
  return intrinsic_matrix(b.intrinsics).inverse().transpose() * e * intrinsic_matrix(a.intrinsics).inverse();
}

double epipolar_distance(const geometry::Mat3& f, const geometry::Pixel& pa, const geometry::Pixel& pb) {
  const Vec3 line = f * Vec3(pa.u, pa.v, 1.0);
  const double norm = std::hypot(line.x(), line.y());
  if (norm == 0.0) return INFINITY;
  return std::abs(line.dot(Vec3(pb.u, pb.v, 1.0))) / norm;
}

MatchResult match_stereo(const std::vector<Detection2D>& a, const std::vector<Detection2D>& b,
                         const geometry::CameraModel& cam_a, const geometry::CameraModel& cam_b,
                         double gate_px) {
  if (!(gate_px >= 0.0)) throw InvalidArgument("epipolar gate must be non-negative");
  const Detection2D* first = !a.empty() ? &a.front() : (!b.empty() ? &b.front() : nullptr);
  for (const auto* list : {&a, &b}) {
    for (const auto& d : *list) {
      if (d.trigger_utc_ns != first->trigger_utc_ns) {
        throw InvalidArgument("stereo matching needs detections of one trigger time, got " +
                              std::to_string(first->trigger_utc_ns) + " and " +
                              std::to_string(d.trigger_utc_ns));
      }
    }
  }
  for (const auto& d : a) {
    if (d.camera_id != cam_a.id) throw InvalidArgument("detection of camera " + std::to_string(d.camera_id) + " passed as camera " + std::to_string(cam_a.id));
  }
  for (const auto& d : b) {
    if (d.camera_id != cam_b.id) throw InvalidArgument("detection of camera " + std::to_string(d.camera_id) + " passed as camera " + std::to_string(cam_b.id));
  }

  MatchResult out;
  if (a.empty() || b.empty()) {
    out.unmatched_a = a;
    out.unmatched_b = b;
    return out;
  }
  const geometry::Mat3 f = fundamental_matrix(cam_a, cam_b);
  std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size(), kForbidden));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i].actor_class != b[j].actor_class) continue;
      const double d = epipolar_distance(f, a[i].center_px, b[j].center_px);
      if (d <= gate_px) cost[i][j] = d;
    }
  }
  const auto sol = solve_assignment(cost);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int j = sol.row_to_col[i];
    if (j < 0) {
      out.unmatched_a.push_back(a[i]);
    } else {
      out.matches.push_back({a[i], b[static_cast<std::size_t>(j)], cost[i][static_cast<std::size_t>(j)], {}});
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (sol.col_to_row[j] < 0) out.unmatched_b.push_back(b[j]);
  }
  return out;
}

std::vector<StereoMatch> keypoint_matches(const StereoMatch& m) {
  std::vector<StereoMatch> out;
  for (const auto& ka : m.a.keypoints) {
    for (const auto& kb : m.b.keypoints) {
      if (ka.name != kb.name) continue;
      StereoMatch k = m;
      k.a.center_px = ka.px;
      k.b.center_px = kb.px;
      k.a.keypoints.clear();
      k.b.keypoints.clear();
      k.part = ka.name;
      out.push_back(std::move(k));
    }
  }
  return out;
}

}  // namespace junction::perception
