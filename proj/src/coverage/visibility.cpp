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

#include "junction/coverage/visibility.hpp"

#include <algorithm>

namespace junction::coverage {

Prism::Prism(Polygon2 footprint, double height_m)
    : footprint_(std::move(footprint)), height_m_(height_m), bbox_(bounding_box(footprint_)) {}

bool Prism::intersects_segment(const Vec3& a, const Vec3& b) const {
  // Clip the segment parameter to the slab 0 <= z <= height.
  double t0 = 0.0;
  double t1 = 1.0;
  const double dz = b.z() - a.z();
  if (dz == 0.0) {
    if (a.z() < 0.0 || a.z() > height_m_) return false;
  } else {
    double ta = (0.0 - a.z()) / dz;
    double tb = (height_m_ - a.z()) / dz;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  const Vec2 a2(a.x(), a.y());
  const Vec2 d2(b.x() - a.x(), b.y() - a.y());
  const Vec2 p0 = a2 + t0 * d2;
  const Vec2 p1 = a2 + t1 * d2;

  Box2 seg_box{p0.cwiseMin(p1), p0.cwiseMax(p1)};
  if (!seg_box.overlaps(bbox_)) return false;
  if (point_in_polygon(p0, footprint_) || point_in_polygon(p1, footprint_)) return true;
  const std::size_t n = footprint_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (segments_intersect(p0, p1, footprint_[i], footprint_[(i + 1) % n])) return true;
  }
  return false;
}

std::vector<Prism> make_prisms(std::span<const scene::Occluder> occluders) {
  std::vector<Prism> prisms;
  prisms.reserve(occluders.size());
  for (const auto& o : occluders) prisms.emplace_back(o);
  return prisms;
}

bool line_of_sight(const Vec3& from, const Vec3& to, std::span<const Prism> prisms) {
  return std::none_of(prisms.begin(), prisms.end(),
                      [&](const Prism& p) { return p.intersects_segment(from, to); });
}

CameraViewTester::CameraViewTester(const geometry::CameraModel& cam)
    : cam_(cam), world_to_cam_(cam.pose.rotation().transpose()) {}

bool CameraViewTester::in_view(const Vec3& target_m) const {
  const Vec3 rel = target_m - cam_.pose.position_m;
  if (rel.squaredNorm() > cam_.max_range_m * cam_.max_range_m) return false;
  const Vec3 pc = world_to_cam_ * rel;
  if (pc.z() <= 0.0) return false;
  const auto& k = cam_.intrinsics;
  const geometry::Pixel px{k.fx_px * pc.x() / pc.z() + k.cx_px, k.fy_px * pc.y() / pc.z() + k.cy_px};
  return geometry::inside_image(k, px);
}

bool in_view(const geometry::CameraModel& cam, const Vec3& target_m) {
  return CameraViewTester(cam).in_view(target_m);
}

bool visible(const geometry::CameraModel& cam, const Vec3& target_m,
             std::span<const scene::Occluder> occluders) {
  const auto prisms = make_prisms(occluders);
  return visible(cam, target_m, std::span<const Prism>(prisms));
}

bool visible(const geometry::CameraModel& cam, const Vec3& target_m, std::span<const Prism> prisms) {
  return CameraViewTester(cam).visible(target_m, prisms);
}

}  // namespace junction::coverage
