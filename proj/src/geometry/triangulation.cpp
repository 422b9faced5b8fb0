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

#include "junction/geometry/triangulation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "junction/common/error.hpp"

namespace junction::geometry {

MidpointResult triangulate_midpoint(const Ray& r1, const Ray& r2) {
  const Vec3& d1 = r1.direction;
  const Vec3& d2 = r2.direction;
  if (d1.cross(d2).norm() <= kParallelSinThreshold) {
    throw DegenerateGeometry("rays are parallel within tolerance");
  }
  const Vec3 w0 = r1.origin_m - r2.origin_m;
  const double a = d1.dot(d1);
  const double b = d1.dot(d2);
  const double c = d2.dot(d2);
  const double d = d1.dot(w0);
  const double e = d2.dot(w0);
  const double denom = a * c - b * b;
  const double s = (b * e - c * d) / denom;
  const double t = (a * e - b * d) / denom;
  const Vec3 p1 = r1.origin_m + s * d1;
  const Vec3 p2 = r2.origin_m + t * d2;
  return {0.5 * (p1 + p2), (p1 - p2).norm()};
}

namespace {

// d(u, v)/d(point) for a pinhole camera at a point with positive depth.
Eigen::Matrix<double, 2, 3> projection_jacobian(const CameraModel& cam, const Vec3& point_m) {
  const Mat3 rt = cam.pose.rotation().transpose();
  const Vec3 pc = rt * (point_m - cam.pose.position_m);
  const double iz = 1.0 / pc.z();
  Eigen::Matrix<double, 2, 3> dpc;
  dpc << cam.intrinsics.fx_px * iz, 0.0, -cam.intrinsics.fx_px * pc.x() * iz * iz, 0.0,
      cam.intrinsics.fy_px * iz, -cam.intrinsics.fy_px * pc.y() * iz * iz;
  return dpc * rt;
}

}  // namespace

double reprojection_rms(std::span<const ViewObservation> observations, const Vec3& point_m) {
  if (observations.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& obs : observations) {
    const auto px = project(obs.camera, point_m);
    if (!px) return std::numeric_limits<double>::infinity();
    const double du = px->u - obs.pixel.u;
    const double dv = px->v - obs.pixel.v;
    sum += du * du + dv * dv;
  }
  return std::sqrt(sum / static_cast<double>(observations.size()));
}

MultiViewResult triangulate_multi(std::span<const ViewObservation> observations,
                                  const MultiViewOptions& options) {
  if (observations.size() < 2) {
    throw DegenerateGeometry("multi-view triangulation needs at least two views");
  }
  double max_baseline = 0.0;
  const Vec3& first_origin = observations.front().camera.pose.position_m;
  for (const auto& obs : observations) {
    max_baseline = std::max(max_baseline, (obs.camera.pose.position_m - first_origin).norm());
  }
  if (max_baseline < 1e-9) {
    throw DegenerateGeometry("all views share one camera center");
  }

  Mat3 a = Mat3::Zero();
  Vec3 rhs = Vec3::Zero();
  for (const auto& obs : observations) {
    const Ray ray = backproject(obs.camera, obs.pixel.u, obs.pixel.v);
    const Mat3 proj = Mat3::Identity() - ray.direction * ray.direction.transpose();
    a += proj;
    rhs += proj * ray.origin_m;
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(a);
  const double lmax = eig.eigenvalues().maxCoeff();
  const double lmin = eig.eigenvalues().minCoeff();
  if (!(lmax > 0.0) || lmin / lmax <= kParallelSinThreshold * kParallelSinThreshold) {
    throw DegenerateGeometry("ray constraints are rank deficient");
  }
  Vec3 x = a.ldlt().solve(rhs);

  for (int pass = 0; pass < options.refinement_passes; ++pass) {
    Mat3 jtj = Mat3::Zero();
    Vec3 jtr = Vec3::Zero();
    bool usable = true;
    for (const auto& obs : observations) {
      const auto px = project(obs.camera, x);
      if (!px) {
        usable = false;
        break;
      }
      const auto j = projection_jacobian(obs.camera, x);
      const Eigen::Vector2d r(obs.pixel.u - px->u, obs.pixel.v - px->v);
      jtj += j.transpose() * j;
      jtr += j.transpose() * r;
    }
    if (!usable) break;
    const Vec3 step = jtj.ldlt().solve(jtr);
    if (!step.allFinite()) break;
    const Vec3 candidate = x + step;
    // Accept the step only if it does not worsen the reprojection error.
    if (reprojection_rms(observations, candidate) <= reprojection_rms(observations, x)) {
      x = candidate;
    }
  }
  return {x, reprojection_rms(observations, x)};
}

double stereo_axis_angle(const CameraModel& a, const CameraModel& b) {
  const Vec3 fa = a.pose.optical_axis();
  const Vec3 fb = b.pose.optical_axis();
  const Vec2 ha(fa.x(), fa.y());
  const Vec2 hb(fb.x(), fb.y());
  if (ha.norm() < 1e-9 || hb.norm() < 1e-9) {
    throw DegenerateGeometry("optical axis is vertical; horizontal axis angle undefined");
  }
  const double c = std::clamp(ha.normalized().dot(hb.normalized()), -1.0, 1.0);
  const double s = ha.normalized().x() * hb.normalized().y() - ha.normalized().y() * hb.normalized().x();
  return rad_to_deg(std::abs(std::atan2(s, c)));
}

}  // namespace junction::geometry
