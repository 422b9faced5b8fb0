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

#include <Eigen/Core>
#include <span>
#include <vector>

namespace junction {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Closed polygon; the last vertex connects back to the first.
using Polygon2 = std::vector<Vec2>;
using Polyline2 = std::vector<Vec2>;

struct Box2 {
  Vec2 min{0.0, 0.0};
  Vec2 max{0.0, 0.0};

  bool contains(const Vec2& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
  }
  bool contains(const Box2& other) const {
    return contains(other.min) && contains(other.max);
  }
  bool overlaps(const Box2& o) const {
    return min.x() <= o.max.x() && o.min.x() <= max.x() && min.y() <= o.max.y() &&
           o.min.y() <= max.y();
  }
  void extend(const Vec2& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
};

Box2 bounding_box(std::span<const Vec2> points);

/// Even-odd rule; points exactly on an edge may go either way.
bool point_in_polygon(const Vec2& p, std::span<const Vec2> polygon);

double polygon_area(std::span<const Vec2> polygon);

/// At least three vertices, non-zero area, and no two non-adjacent edges
/// touching.
bool polygon_is_simple(std::span<const Vec2> polygon);

/// Proper or touching intersection of closed segments [a0,a1] and [b0,b1].
bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1);

double polyline_length(std::span<const Vec2> polyline);

/// Point at arc length `s` from the first vertex, clamped to the ends.
Vec2 polyline_point_at(std::span<const Vec2> polyline, double s);

double distance_to_polyline(const Vec2& p, std::span<const Vec2> polyline);

/// Regular n-gon approximating a circle.
Polygon2 circle_polygon(const Vec2& center, double radius, int sides);

/// Oriented rectangle: `length` along `heading_rad`, `width` across.
Polygon2 oriented_rectangle(const Vec2& center, double length, double width, double heading_rad);

}  // namespace junction
