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

#include "scenes.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "junction/geometry/camera.hpp"

namespace scenes {

using namespace junction;

constexpr double kPi = std::numbers::pi;

geometry::CameraModel camera(int id, double x, double y, double z, double yaw_deg, double pitch_deg,
                             double range, double hfov, int w, int h) {
  geometry::CameraModel c;
  c.id = id;
  c.intrinsics = geometry::intrinsics_from_lens(hfov, w, h);
  c.pose.position_m = Vec3(x, y, z);
  c.pose.yaw_rad = geometry::deg_to_rad(yaw_deg);
  c.pose.pitch_rad = geometry::deg_to_rad(pitch_deg);
  c.max_range_m = range;
  return c;
}

scene::Scenario random_scene(std::uint64_t seed, double extent) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-extent / 2, extent / 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  scene::Scenario s;
  s.duration_s = 1.0;
  const double h = extent / 2;
  s.layout.roi_inner = {Vec2(-h / 2, -h / 2), Vec2(h / 2, -h / 2), Vec2(h / 2, h / 2), Vec2(-h / 2, h / 2)};
  const int ncam = 2 + static_cast<int>(rng() % 4);
  for (int i = 0; i < ncam; ++i) {
    const double x = pos(rng), y = pos(rng);
    // Aim roughly at the center with a random twist.
    const double yaw = std::atan2(-y, -x) * 180.0 / kPi + (unit(rng) - 0.5) * 120.0;
    s.cameras.push_back(camera(i + 1, x, y, 3.0 + 7.0 * unit(rng), yaw, -10.0 - 40.0 * unit(rng),
                               10.0 + extent * unit(rng), 40.0 + 60.0 * unit(rng), 640, 480));
  }
  const int nocc = static_cast<int>(rng() % 4);
  for (int i = 0; i < nocc; ++i) {
    scene::Occluder o;
    const Vec2 c(pos(rng), pos(rng));
    o.footprint = oriented_rectangle(c, 1.0 + 6.0 * unit(rng), 1.0 + 4.0 * unit(rng), unit(rng) * kPi);
    o.height_m = 0.5 + 8.0 * unit(rng);
    s.occluders.push_back(o);
  }
  return s;
}

scene::Scenario seven_pair_scene() {
  scene::Scenario s;
  s.duration_s = 2.0;
  for (int k = 0; k < 5; ++k) {
    const double bearing = (200.0 + 50.0 * k) * kPi / 180.0;
    const Vec3 pos(25.0 * std::cos(bearing), 25.0 * std::sin(bearing), 6.0);
    const Vec3 d = Vec3(0, 0, 1) - pos;
    s.cameras.push_back(camera(k + 1, pos.x(), pos.y(), pos.z(), std::atan2(d.y(), d.x()) * 180.0 / kPi,
                               std::atan2(d.z(), d.head<2>().norm()) * 180.0 / kPi));
  }
  s.actors.push_back(line_actor(1, scene::ActorClass::kPedestrian, 0.0, 0.0, 1e-3, 0.0, 1e-4));
  return s;
}

scene::Scenario placement_scene() {
  scene::Scenario s;
  s.duration_s = 1.0;
  s.layout.roi_inner = {Vec2(-8, -8), Vec2(8, -8), Vec2(8, 8), Vec2(-8, 8)};
  s.layout.crosswalks.push_back({1, {Vec2(-8, 4), Vec2(-4, 4), Vec2(-4, 8), Vec2(-8, 8)}});
  s.layout.approaches.push_back({"east", {Vec2(0, 0), Vec2(20, 0)}, 20.0});
  s.layout.approaches.push_back({"north", {Vec2(0, 0), Vec2(0, 20)}, 20.0});
  s.layout.lanes.push_back({"bike", scene::LaneKind::kBicycle, {Vec2(-12, -6), Vec2(12, -6)}, 1.5});
  scene::Occluder o;
  o.footprint = {Vec2(2, 2), Vec2(5, 2), Vec2(5, 5), Vec2(2, 5)};
  o.height_m = 4.0;
  s.occluders.push_back(o);
  return s;
}

std::vector<coverage::PlacementCandidate> placement_candidates(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<coverage::PlacementCandidate> out;
  for (int i = 0; i < count; ++i) {
    const double ang = 2.0 * kPi * (i + 0.5 * unit(rng)) / count;
    const double r = 12.0 + 8.0 * unit(rng);
    coverage::PlacementCandidate c;
    c.pole_id = i + 1;
    c.position_m = Vec2(r * std::cos(ang), r * std::sin(ang));
    c.height_m = 4.0 + 4.0 * unit(rng);
    c.yaw_rad = ang + kPi + (unit(rng) - 0.5) * 0.8;
    c.pitch_rad = geometry::deg_to_rad(-15.0 - 15.0 * unit(rng));
    out.push_back(c);
  }
  return out;
}

scene::Actor line_actor(int id, scene::ActorClass c, double x0, double y0, double x1, double y1, double speed,
                        double t0) {
  scene::Actor a;
  a.id = id;
  a.actor_class = c;
  const double d = std::hypot(x1 - x0, y1 - y0);
  const double heading = std::atan2(y1 - y0, x1 - x0);
  a.trajectory = {{t0, x0, y0, heading, speed}, {t0 + d / speed, x1, y1, heading, speed}};
  if (c == scene::ActorClass::kCyclist) a.shape = scene::Cylinder{0.4, 1.7};
  return a;
}

}  // namespace scenes
