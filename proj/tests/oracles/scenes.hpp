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
#include <vector>

#include "junction/coverage/placement.hpp"
#include "junction/scene/scenario.hpp"

namespace scenes {

/// Camera with the reference lens at a pose given in degrees.
junction::geometry::CameraModel camera(int id, double x, double y, double z, double yaw_deg,
                                       double pitch_deg, double range = 120.0, double hfov = 71.0,
                                       int w = 4096, int h = 2160);

/// Randomized scene inside a square of side `extent` (meters) around the
/// origin: 2 to 5 cameras and 0 to 3 box occluders.
junction::scene::Scenario random_scene(std::uint64_t seed, double extent);

/// Small layout for placement: a 16 m inner region, one crosswalk and two
/// 20 m approaches.
junction::scene::Scenario placement_scene();
std::vector<junction::coverage::PlacementCandidate> placement_candidates(std::uint64_t seed, int count);

/// Five cameras on a 200 degree arc of radius 25 m, 50 degrees apart, all
/// aimed at (0, 0, 1): exactly seven pairs fall inside the axis-angle window
/// and all of them see the origin. One stationary pedestrian stands there.
junction::scene::Scenario seven_pair_scene();

/// Straight-line actor from (x0, y0) to (x1, y1) at constant speed, starting
/// at t0.
junction::scene::Actor line_actor(int id, junction::scene::ActorClass c, double x0, double y0, double x1,
                                  double y1, double speed, double t0 = 0.0);

}  // namespace scenes
