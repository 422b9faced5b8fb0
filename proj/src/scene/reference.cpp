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

#include "junction/scene/reference.hpp"

#include <array>

namespace junction::scene {

namespace {

constexpr double kLaneWidthM = 3.25;
constexpr double kMainHalfWidthM = 2.5 * kLaneWidthM;
constexpr double kBikeLaneWidthM = 1.75;
constexpr double kArmLengthM = 120.0;

struct PoleMount {
  int id;
  double x_m;
  double y_m;
  double z_m;
  double yaw_deg;
  double pitch_deg;
  double max_range_m;
};

// Pole positions and orientations (layout-assumed).
constexpr std::array<PoleMount, 6> kMounts{{
    {1, 38.5, 10.0, 5.5, 175.0, -20.0, 150.0},
    {2, -19.5, -12.0, 7.5, 130.0, -18.0, 125.0},
    {3, 5.0, 21.0, 6.5, 265.0, -19.0, 145.0},
    {4, 11.5, -14.0, 5.5, 129.0, -21.0, 130.0},
    {5, -8.5, 24.5, 6.0, 314.0, -7.0, 140.0},
    {6, -50.5, -11.5, 7.0, 40.0, -19.0, 110.0},
}};

Polygon2 rect(double x0, double y0, double x1, double y1) {
  return {Vec2(x0, y0), Vec2(x1, y0), Vec2(x1, y1), Vec2(x0, y1)};
}

Lane lane(std::string id, LaneKind kind, Vec2 a, Vec2 b, double width = kLaneWidthM) {
  return Lane{std::move(id), kind, {a, b}, width};
}

JunctionLayout reference_layout() {
  JunctionLayout l;
  const double w = kLaneWidthM;
  // Main road along x: two straight-ahead lanes eastbound, one westbound,
  // one left-turn lane per direction near the junction.
  l.lanes.push_back(lane("main_eb_1", LaneKind::kStraightAhead, {-kArmLengthM, -2 * w}, {kArmLengthM, -2 * w}));
  l.lanes.push_back(lane("main_eb_2", LaneKind::kStraightAhead, {-kArmLengthM, -w}, {kArmLengthM, -w}));
  l.lanes.push_back(lane("main_eb_left", LaneKind::kLeftTurn, {-60.0, 0.0}, {-6.0, 0.0}));
  l.lanes.push_back(lane("main_wb_left", LaneKind::kLeftTurn, {60.0, w}, {6.0, w}));
  l.lanes.push_back(lane("main_wb_1", LaneKind::kStraightAhead, {kArmLengthM, 2 * w}, {-kArmLengthM, 2 * w}));
  // Minor arms: one lane per direction, a left-turn lane on the south arm.
  l.lanes.push_back(lane("minor_n_in", LaneKind::kMinor, {-0.5 * w, kArmLengthM}, {-0.5 * w, kMainHalfWidthM}));
  l.lanes.push_back(lane("minor_n_out", LaneKind::kMinor, {0.5 * w, kMainHalfWidthM}, {0.5 * w, kArmLengthM}));
  l.lanes.push_back(lane("minor_s_in", LaneKind::kMinor, {w, -kArmLengthM}, {w, -kMainHalfWidthM}));
  l.lanes.push_back(lane("minor_s_left", LaneKind::kLeftTurn, {0.0, -40.0}, {0.0, -kMainHalfWidthM}));
  l.lanes.push_back(lane("minor_s_out", LaneKind::kMinor, {-w, -kMainHalfWidthM}, {-w, -kArmLengthM}));
  const double bike_y = kMainHalfWidthM + 0.5 * kBikeLaneWidthM;
  l.lanes.push_back(lane("bicycle_north", LaneKind::kBicycle, {-50.0, bike_y}, {50.0, bike_y}, kBikeLaneWidthM));

  const double road_top = kMainHalfWidthM + kBikeLaneWidthM;
  l.crosswalks.push_back({1, rect(-14.0, -kMainHalfWidthM, -10.0, road_top)});
  l.crosswalks.push_back({2, rect(10.0, -kMainHalfWidthM, 14.0, road_top)});
  l.crosswalks.push_back({3, rect(-0.5 * w - 1.0, 12.0, 0.5 * w + 1.0, 16.0)});
  l.roi_inner = rect(-14.0, -kMainHalfWidthM - 1.0, 14.0, 16.0);

  l.approaches.push_back({"west", {Vec2(0.0, 0.0), Vec2(-kArmLengthM, 0.0)}, kArmLengthM});
  l.approaches.push_back({"east", {Vec2(0.0, 0.0), Vec2(kArmLengthM, 0.0)}, kArmLengthM});
  l.approaches.push_back({"north", {Vec2(0.0, 0.0), Vec2(0.0, kArmLengthM)}, kArmLengthM});
  l.approaches.push_back({"south", {Vec2(0.0, 0.0), Vec2(0.0, -kArmLengthM)}, kArmLengthM});
  return l;
}

std::vector<Occluder> reference_occluders() {
  std::vector<Occluder> o;
  o.push_back({rect(-70.0, 18.0, -9.0, 55.0), 12.0, OccluderKind::kBuilding});
  o.push_back({rect(9.0, 21.0, 65.0, 60.0), 15.0, OccluderKind::kBuilding});
  o.push_back({rect(-60.0, -55.0, -12.0, -16.0), 9.0, OccluderKind::kBuilding});
  o.push_back({rect(13.0, -50.0, 70.0, -15.0), 18.0, OccluderKind::kBuilding});
  // Kerbside parking on the south arm.
  o.push_back({oriented_rectangle(Vec2(-7.0, -24.0), 4.6, 1.9, geometry::deg_to_rad(90.0)), 1.5,
               OccluderKind::kParkedCar});
  o.push_back({oriented_rectangle(Vec2(-7.0, -30.0), 4.6, 1.9, geometry::deg_to_rad(90.0)), 1.5,
               OccluderKind::kParkedCar});
  return o;
}

}  // namespace

Scenario reference_scenario() {
  Scenario s;
  s.layout = reference_layout();
  s.occluders = reference_occluders();
  const auto intr = geometry::intrinsics_from_lens(kReferenceHFovDeg, kReferenceWidthPx, kReferenceHeightPx);
  for (const auto& m : kMounts) {
    geometry::CameraModel cam;
    cam.id = m.id;
    cam.intrinsics = intr;
    cam.pose.position_m = Vec3(m.x_m, m.y_m, m.z_m);
    cam.pose.yaw_rad = geometry::deg_to_rad(m.yaw_deg);
    cam.pose.pitch_rad = geometry::deg_to_rad(m.pitch_deg);
    cam.max_range_m = m.max_range_m;
    s.cameras.push_back(cam);
  }
  s.weather.timeline.push_back({0.0, 10000.0, 0.0, 15.0});
  s.duration_s = 60.0;
  s.frame_rate_hz = kReferenceFrameRateHz;
  s.seed = 0;
  s.installation_limits = true;
  return s;
}

std::map<std::string, std::string> reference_comments() {
  std::map<std::string, std::string> c;
  c["scenario"] = "six-camera installation; 71 deg lens, 4096x2160, 25 Hz";
  c["scenario/layout/lanes"] = "five-lane main road with bicycle lane; lane widths layout-assumed";
  c["scenario/layout/crosswalks"] = "three signalised crosswalks; positions layout-assumed";
  c["scenario/layout/approaches"] = "approach lengths layout-assumed (coverage target 100 m)";
  c["scenario/layout/roi_inner"] = "layout-assumed";
  c["scenario/occluders"] = "corner buildings and parked cars; footprints and heights layout-assumed";
  for (std::size_t i = 0; i < kMounts.size(); ++i) {
    c["scenario/cameras/" + std::to_string(i)] = "pole position, orientation and range layout-assumed";
  }
  c["scenario/weather"] = "clear-weather default; layout-assumed";
  return c;
}

}  // namespace junction::scene
