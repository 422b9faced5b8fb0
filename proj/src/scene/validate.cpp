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

#include <cmath>
#include <set>
#include <string>

#include "junction/scene/scenario.hpp"

namespace junction::scene {

namespace {

class Collector {
 public:
  void check(bool ok, std::string entity, std::string rule) {
    if (!ok) out_.push_back({std::move(entity), std::move(rule)});
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

std::string idx(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

void validate_camera(const geometry::CameraModel& cam, const std::string& e, bool installation_limits,
                     Collector& v) {
  const auto& k = cam.intrinsics;
  v.check(cam.id >= 1 && cam.id <= 64, e + "/id", "camera id must lie in 1..64");
  v.check(k.width_px > 0 && k.height_px > 0, e + "/intrinsics", "image size must be positive");
  v.check(k.fx_px > 0.0 && k.fy_px > 0.0, e + "/intrinsics", "focal lengths must be positive");
  v.check(k.cx_px >= 0.0 && k.cx_px <= k.width_px && k.cy_px >= 0.0 && k.cy_px <= k.height_px,
          e + "/intrinsics", "principal point must lie inside the image");
  v.check(cam.max_range_m > 0.0, e + "/max_range_m", "max range must be positive");
  const auto& p = cam.pose.position_m;
  v.check(p.allFinite() && std::isfinite(cam.pose.yaw_rad) && std::isfinite(cam.pose.pitch_rad) &&
              std::isfinite(cam.pose.roll_rad),
          e + "/pose", "pose must be finite");
  v.check(p.z() >= 0.0 && p.z() <= 20.0, e + "/pose/position_m", "camera height must lie in [0, 20] m");
  v.check(std::abs(cam.pose.rotation().determinant() - 1.0) < 1e-9, e + "/pose",
          "rotation must be orthonormal");
  if (installation_limits) {
    v.check(p.z() <= kMaxMountHeightM, e + "/pose/position_m",
            "camera height exceeds 8 m mounting limit");
  }
}

}  // namespace

std::vector<Violation> validate_scenario(const Scenario& s) {
  Collector v;
  v.check(s.duration_s > 0.0, "scenario/duration_s", "duration must be positive");
  v.check(s.frame_rate_hz > 0.0, "scenario/frame_rate_hz", "frame rate must be positive");

  std::set<int> camera_ids;
  for (std::size_t i = 0; i < s.cameras.size(); ++i) {
    const auto e = idx("scenario/cameras", i);
    validate_camera(s.cameras[i], e, s.installation_limits, v);
    v.check(camera_ids.insert(s.cameras[i].id).second, e + "/id",
            "duplicate camera id " + std::to_string(s.cameras[i].id));
  }

  const auto& layout = s.layout;
  for (std::size_t i = 0; i < layout.lanes.size(); ++i) {
    const auto& lane = layout.lanes[i];
    const auto e = idx("scenario/layout/lanes", i);
    v.check(lane.centerline.size() >= 2, e + "/centerline", "lane needs at least two points");
    v.check(lane.width_m > 0.0, e + "/width_m", "lane width must be positive");
  }
  std::set<int> crosswalk_ids;
  for (std::size_t i = 0; i < layout.crosswalks.size(); ++i) {
    const auto& cw = layout.crosswalks[i];
    const auto e = idx("scenario/layout/crosswalks", i);
    v.check(polygon_is_simple(cw.polygon), e + "/polygon", "crosswalk polygon must be simple");
    v.check(crosswalk_ids.insert(cw.index).second, e + "/index", "duplicate crosswalk index");
  }
  if (!layout.roi_inner.empty()) {
    v.check(polygon_is_simple(layout.roi_inner), "scenario/layout/roi_inner",
            "inner region polygon must be simple");
  }
  for (std::size_t i = 0; i < layout.approaches.size(); ++i) {
    const auto& a = layout.approaches[i];
    const auto e = idx("scenario/layout/approaches", i);
    v.check(a.polyline.size() >= 2, e + "/polyline", "approach needs at least two points");
    v.check(a.length_m > 0.0, e + "/length_m", "approach length must be positive");
    if (s.installation_limits) {
      v.check(a.length_m >= kMinApproachLengthM, e + "/length_m",
              "approach shorter than 100 m");
    }
  }
  if (s.installation_limits) {
    v.check(static_cast<int>(layout.crosswalks.size()) == kInstallationLimitsCrosswalks,
            "scenario/layout/crosswalks",
            "expected exactly 3 crosswalks, found " + std::to_string(layout.crosswalks.size()));
  }

  for (std::size_t i = 0; i < s.occluders.size(); ++i) {
    const auto& o = s.occluders[i];
    const auto e = idx("scenario/occluders", i);
    v.check(o.height_m > 0.0, e + "/height_m", "occluder height must be positive");
    v.check(polygon_is_simple(o.footprint), e + "/footprint", "occluder footprint must be simple");
  }

  std::set<int> actor_ids;
  for (std::size_t i = 0; i < s.actors.size(); ++i) {
    const auto& a = s.actors[i];
    const auto e = idx("scenario/actors", i);
    v.check(actor_ids.insert(a.id).second, e + "/id", "duplicate actor id " + std::to_string(a.id));
    v.check(!a.trajectory.empty(), e + "/trajectory", "trajectory must not be empty");
    bool increasing = true;
    bool speeds_ok = true;
    for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
      if (k > 0 && !(a.trajectory[k].t_s > a.trajectory[k - 1].t_s)) increasing = false;
      if (!(a.trajectory[k].speed_mps >= 0.0)) speeds_ok = false;
    }
    v.check(increasing, e + "/trajectory", "trajectory times must be strictly increasing");
    v.check(speeds_ok, e + "/trajectory", "speeds must be non-negative");
    const bool shape_ok = std::visit(
        [](const auto& sh) {
          using T = std::decay_t<decltype(sh)>;
          if constexpr (std::is_same_v<T, Cylinder>) {
            return sh.radius_m > 0.0 && sh.height_m > 0.0;
          } else {
            return sh.length_m > 0.0 && sh.width_m > 0.0 && sh.height_m > 0.0;
          }
        },
        a.shape);
    v.check(shape_ok, e + "/shape", "shape dimensions must be positive");
    v.check(a.ref_height_m >= 0.0, e + "/ref_height_m", "reference height must be non-negative");
  }

  const auto& tl = s.weather.timeline;
  for (std::size_t i = 0; i < tl.size(); ++i) {
    const auto e = idx("scenario/weather/timeline", i);
    v.check(tl[i].visibility_m > 0.0, e + "/visibility_m", "visibility must be positive");
    if (i > 0) v.check(tl[i].t_s > tl[i - 1].t_s, e + "/t_s", "weather timeline must increase in t");
  }
  return v.take();
}

}  // namespace junction::scene
