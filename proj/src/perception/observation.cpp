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

#include "junction/perception/observation.hpp"

#include <algorithm>

#include "junction/common/error.hpp"
#include "junction/geometry/triangulation.hpp"

namespace junction::perception {

namespace {

constexpr double kJacobianStepPx = 1e-3;

Vec3 midpoint_of(const geometry::CameraModel& a, const geometry::CameraModel& b,
                 const Eigen::Vector4d& px) {
  return geometry::triangulate_midpoint(geometry::backproject(a, px[0], px[1]),
                                        geometry::backproject(b, px[2], px[3]))
      .point_m;
}

}  // namespace

std::vector<Observation3D> observe(const std::vector<StereoMatch>& matches,
                                   const geometry::CameraModel& cam_a,
                                   const geometry::CameraModel& cam_b,
                                   const coverage::StereoPairSpec& pair,
                                   const ObserveOptions& options) {
  if (!(options.sigma_px >= 0.0) || !(options.min_sigma_px > 0.0)) {
    throw InvalidArgument("pixel sigma must be non-negative with a positive floor");
  }
  const double sigma = std::max(options.sigma_px, options.min_sigma_px);
  std::vector<Observation3D> out;
  for (const auto& m : matches) {
    if (m.a.camera_id != cam_a.id || m.b.camera_id != cam_b.id) {
      throw InvalidArgument("match cameras do not belong to the stereo pair");
    }
    const auto tri = geometry::triangulate_midpoint(
        geometry::backproject(cam_a, m.a.center_px.u, m.a.center_px.v),
        geometry::backproject(cam_b, m.b.center_px.u, m.b.center_px.v));
    if (tri.gap_m > options.gap_limit_m) continue;

    const Eigen::Vector4d px(m.a.center_px.u, m.a.center_px.v, m.b.center_px.u, m.b.center_px.v);
    Eigen::Matrix<double, 3, 4> jac;
    for (int k = 0; k < 4; ++k) {
      Eigen::Vector4d hi = px;
      Eigen::Vector4d lo = px;
      hi[k] += kJacobianStepPx;
      lo[k] -= kJacobianStepPx;
      jac.col(k) = (midpoint_of(cam_a, cam_b, hi) - midpoint_of(cam_a, cam_b, lo)) / (2.0 * kJacobianStepPx);
    }

    Observation3D o;
    o.position_m = tri.point_m;
    o.covariance_m2 = sigma * sigma * jac * jac.transpose();
    o.covariance_m2 = 0.5 * (o.covariance_m2 + o.covariance_m2.transpose()).eval();
    o.pair = pair;
    o.trigger_utc_ns = m.a.trigger_utc_ns;
    o.actor_class = m.a.actor_class;
    o.gap_m = tri.gap_m;
    o.part = m.part;
    if (m.a.truth_actor_id && m.a.truth_actor_id == m.b.truth_actor_id) o.truth_actor_id = m.a.truth_actor_id;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace junction::perception
