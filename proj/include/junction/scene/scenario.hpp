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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "junction/common/polygon.hpp"
#include "junction/geometry/camera.hpp"

namespace junction::scene {

enum class LaneKind { kStraightAhead, kLeftTurn, kMinor, kBicycle };

struct Lane {
  std::string id;
  LaneKind kind = LaneKind::kStraightAhead;
  Polyline2 centerline;
  double width_m = 3.0;
};

struct Crosswalk {
  int index = 0;
  Polygon2 polygon;
};

struct Approach {
  std::string direction;
  /// Starts at the junction center and runs outward.
  Polyline2 polyline;
  double length_m = 0.0;
};

struct JunctionLayout {
  std::vector<Lane> lanes;
  std::vector<Crosswalk> crosswalks;
  Polygon2 roi_inner;
  std::vector<Approach> approaches;
};

enum class OccluderKind { kBuilding, kParkedCar, kFurniture };

/// Footprint extruded vertically from the ground to height_m.
struct Occluder {
  Polygon2 footprint;
  double height_m = 1.0;
  OccluderKind kind = OccluderKind::kBuilding;
};

enum class ActorClass { kPedestrian, kCyclist, kVehicle, kOther };

struct Cylinder {
  double radius_m = 0.3;
  double height_m = 1.8;
};

struct Box {
  double length_m = 4.5;
  double width_m = 1.8;
  double height_m = 1.5;
};

using ActorShape = std::variant<Cylinder, Box>;

struct TrajectorySample {
  double t_s = 0.0;
  double x_m = 0.0;
  double y_m = 0.0;
  double heading_rad = 0.0;
  double speed_mps = 0.0;
};

struct Actor {
  int id = 0;
  ActorClass actor_class = ActorClass::kPedestrian;
  std::vector<TrajectorySample> trajectory;
  ActorShape shape = Cylinder{};
  double ref_height_m = 1.0;
};

struct ActorPose {
  double x_m = 0.0;
  double y_m = 0.0;
  double heading_rad = 0.0;
  double speed_mps = 0.0;
};

struct WeatherSample {
  double t_s = 0.0;
  double visibility_m = 10000.0;
  double precipitation_mmph = 0.0;
  double temperature_C = 15.0;
};

struct WeatherState {
  std::vector<WeatherSample> timeline;
};

struct Scenario {
  JunctionLayout layout;
  std::vector<Occluder> occluders;
  std::vector<geometry::CameraModel> cameras;
  std::vector<Actor> actors;
  WeatherState weather;
  double duration_s = 60.0;
  double frame_rate_hz = 25.0;
  std::uint64_t seed = 0;
  /// Enforces the installation's constraints (three crosswalks, approaches of
  /// at least 100 m, camera heights of at most 8 m) during validation.
  bool installation_limits = false;
};

inline constexpr double kMaxMountHeightM = 8.0;
inline constexpr double kMinApproachLengthM = 100.0;
inline constexpr int kInstallationLimitsCrosswalks = 3;

const char* to_string(LaneKind kind);
const char* to_string(OccluderKind kind);
const char* to_string(ActorClass c);
std::optional<LaneKind> lane_kind_from_string(const std::string& s);
std::optional<OccluderKind> occluder_kind_from_string(const std::string& s);
std::optional<ActorClass> actor_class_from_string(const std::string& s);

bool is_vru(ActorClass c);
double shape_height(const ActorShape& shape);

/// Linear interpolation between the bracketing samples (heading along the
/// shorter arc). std::nullopt outside [first sample, last sample].
std::optional<ActorPose> actor_pose_at(const Actor& actor, double t_s);

/// Footprint of the actor at a pose: 16-gon for cylinders, oriented rectangle
/// for boxes.
Polygon2 actor_footprint(const Actor& actor, const ActorPose& pose);

/// Weather visibility at t, interpolated linearly and held constant beyond
/// the ends. Unlimited when the timeline is empty.
double visibility_at(const WeatherState& weather, double t_s);

const geometry::CameraModel* find_camera(const Scenario& s, int id);

/// Ground region spanned by layout, occluders and cameras.
Box2 scenario_bounds(const Scenario& s);

struct Violation {
  std::string entity;
  std::string rule;
};

/// Empty iff every type invariant holds.
std::vector<Violation> validate_scenario(const Scenario& s);

}  // namespace junction::scene
