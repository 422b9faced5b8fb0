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

#include "junction/scene/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace junction::scene {

const char* to_string(LaneKind kind) {
  switch (kind) {
    case LaneKind::kStraightAhead: return "straight_ahead";
    case LaneKind::kLeftTurn: return "left_turn";
    case LaneKind::kMinor: return "minor";
    case LaneKind::kBicycle: return "bicycle";
  }
  return "?";
}

const char* to_string(OccluderKind kind) {
  switch (kind) {
    case OccluderKind::kBuilding: return "building";
    case OccluderKind::kParkedCar: return "parked_car";
    case OccluderKind::kFurniture: return "furniture";
  }
  return "?";
}

const char* to_string(ActorClass c) {
  switch (c) {
    case ActorClass::kPedestrian: return "pedestrian";
    case ActorClass::kCyclist: return "cyclist";
    case ActorClass::kVehicle: return "vehicle";
    case ActorClass::kOther: return "other";
  }
  return "?";
}

std::optional<LaneKind> lane_kind_from_string(const std::string& s) {
  for (auto k : {LaneKind::kStraightAhead, LaneKind::kLeftTurn, LaneKind::kMinor,
                 LaneKind::kBicycle}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<OccluderKind> occluder_kind_from_string(const std::string& s) {
  for (auto k : {OccluderKind::kBuilding, OccluderKind::kParkedCar, OccluderKind::kFurniture}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<ActorClass> actor_class_from_string(const std::string& s) {
  for (auto k : {ActorClass::kPedestrian, ActorClass::kCyclist, ActorClass::kVehicle,
                 ActorClass::kOther}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_vru(ActorClass c) { return c != ActorClass::kVehicle; }

double shape_height(const ActorShape& shape) {
  return std::visit([](const auto& s) { return s.height_m; }, shape);
}

std::optional<ActorPose> actor_pose_at(const Actor& actor, double t_s) {
  const auto& traj = actor.trajectory;
  if (traj.empty() || t_s < traj.front().t_s || t_s > traj.back().t_s) return std::nullopt;
  auto hi = std::lower_bound(traj.begin(), traj.end(), t_s,
                             [](const TrajectorySample& s, double t) { return s.t_s < t; });
  if (hi->t_s == t_s) {
    return ActorPose{hi->x_m, hi->y_m, hi->heading_rad, hi->speed_mps};
  }
  const auto lo = hi - 1;
  const double a = (t_s - lo->t_s) / (hi->t_s - lo->t_s);
  double dh = std::remainder(hi->heading_rad - lo->heading_rad, 2.0 * std::numbers::pi);
  return ActorPose{lo->x_m + a * (hi->x_m - lo->x_m), lo->y_m + a * (hi->y_m - lo->y_m),
                   lo->heading_rad + a * dh, lo->speed_mps + a * (hi->speed_mps - lo->speed_mps)};
}

Polygon2 actor_footprint(const Actor& actor, const ActorPose& pose) {
  const Vec2 c(pose.x_m, pose.y_m);
  if (const auto* cyl = std::get_if<Cylinder>(&actor.shape)) {
    return circle_polygon(c, cyl->radius_m, 16);
  }
  const auto& box = std::get<Box>(actor.shape);
  return oriented_rectangle(c, box.length_m, box.width_m, pose.heading_rad);
}

double visibility_at(const WeatherState& weather, double t_s) {
  const auto& tl = weather.timeline;
  if (tl.empty()) return std::numeric_limits<double>::infinity();
  if (t_s <= tl.front().t_s) return tl.front().visibility_m;
  if (t_s >= tl.back().t_s) return tl.back().visibility_m;
  auto hi = std::lower_bound(tl.begin(), tl.end(), t_s,
                             [](const WeatherSample& s, double t) { return s.t_s < t; });
  const auto lo = hi - 1;
  const double a = (t_s - lo->t_s) / (hi->t_s - lo->t_s);
  return lo->visibility_m + a * (hi->visibility_m - lo->visibility_m);
}

const geometry::CameraModel* find_camera(const Scenario& s, int id) {
  for (const auto& c : s.cameras) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

Box2 scenario_bounds(const Scenario& s) {
  std::vector<Vec2> pts;
  const auto add = [&](const auto& poly) { pts.insert(pts.end(), poly.begin(), poly.end()); };
  for (const auto& l : s.layout.lanes) add(l.centerline);
  for (const auto& c : s.layout.crosswalks) add(c.polygon);
  add(s.layout.roi_inner);
  for (const auto& a : s.layout.approaches) add(a.polyline);
  for (const auto& o : s.occluders) add(o.footprint);
  for (const auto& c : s.cameras) pts.emplace_back(c.pose.position_m.x(), c.pose.position_m.y());
  return bounding_box(pts);
}

}  // namespace junction::scene
