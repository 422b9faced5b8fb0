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

#include <span>
#include <vector>

#include "junction/common/polygon.hpp"
#include "junction/geometry/camera.hpp"
#include "junction/scene/scenario.hpp"

namespace junction::coverage {

/// An occluder footprint extruded to [0, height] with a cached bounding box.
class Prism {
 public:
  Prism(Polygon2 footprint, double height_m);
  explicit Prism(const scene::Occluder& o) : Prism(o.footprint, o.height_m) {}

  /// True if the closed segment a-b touches the prism volume.
  bool intersects_segment(const Vec3& a, const Vec3& b) const;

  const Polygon2& footprint() const { return footprint_; }
  double height_m() const { return height_m_; }
  const Box2& bbox() const { return bbox_; }

 private:
  Polygon2 footprint_;
  double height_m_;
  Box2 bbox_;
};

std::vector<Prism> make_prisms(std::span<const scene::Occluder> occluders);

/// Sight-segment test against every prism.
bool line_of_sight(const Vec3& from, const Vec3& to, std::span<const Prism> prisms);

/// A camera can see `target_m` when it projects inside the image with
/// positive depth, lies within max_range_m, and the camera-to-target segment
/// touches no occluder volume.
bool visible(const geometry::CameraModel& cam, const Vec3& target_m,
             std::span<const scene::Occluder> occluders);

/// Same predicate with pre-built prisms; the form used in hot loops.
bool visible(const geometry::CameraModel& cam, const Vec3& target_m,
             std::span<const Prism> prisms);

/// Field-of-view and range part of `visible` (no occlusion).
bool in_view(const geometry::CameraModel& cam, const Vec3& target_m);

/// `visible` with the camera rotation cached, for evaluating many targets.
class CameraViewTester {
 public:
  explicit CameraViewTester(const geometry::CameraModel& cam);

  bool in_view(const Vec3& target_m) const;
  bool visible(const Vec3& target_m, std::span<const Prism> prisms) const {
    return in_view(target_m) && line_of_sight(cam_.pose.position_m, target_m, prisms);
  }
  const geometry::CameraModel& camera() const { return cam_; }

 private:
  geometry::CameraModel cam_;
  geometry::Mat3 world_to_cam_;
};

}  // namespace junction::coverage
