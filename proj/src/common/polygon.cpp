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

#include "junction/common/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace junction {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Box2 bounding_box(std::span<const Vec2> points) {
  Box2 box;
  if (points.empty()) return box;
  box.min = box.max = points.front();
  for (const auto& p : points) box.extend(p);
  return box;
}

bool point_in_polygon(const Vec2& p, std::span<const Vec2> polygon) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

double polygon_area(std::span<const Vec2> polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = polygon[i];
    const Vec2& b = polygon[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(twice);
}

bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
  const int d1 = sign(cross(b0, b1, a0));
  const int d2 = sign(cross(b0, b1, a1));
  const int d3 = sign(cross(a0, a1, b0));
  const int d4 = sign(cross(a0, a1, b1));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(a0, b0, b1)) return true;
  if (d2 == 0 && on_segment(a1, b0, b1)) return true;
  if (d3 == 0 && on_segment(b0, a0, a1)) return true;
  if (d4 == 0 && on_segment(b1, a0, a1)) return true;
  return false;
}

bool polygon_is_simple(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  if (polygon_area(polygon) <= 0.0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a0 = polygon[i];
    const Vec2& a1 = polygon[(i + 1) % n];
    if ((a1 - a0).squaredNorm() == 0.0) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(a0, a1, polygon[j], polygon[(j + 1) % n])) return false;
    }
  }
  return true;
}

double polyline_length(std::span<const Vec2> polyline) {
  double length = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) length += (polyline[i] - polyline[i - 1]).norm();
  return length;
}

Vec2 polyline_point_at(std::span<const Vec2> polyline, double s) {
  if (polyline.empty()) return Vec2::Zero();
  if (s <= 0.0) return polyline.front();
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const double seg = (polyline[i] - polyline[i - 1]).norm();
    if (s <= seg && seg > 0.0) return polyline[i - 1] + (polyline[i] - polyline[i - 1]) * (s / seg);
    s -= seg;
  }
  return polyline.back();
}

double distance_to_polyline(const Vec2& p, std::span<const Vec2> polyline) {
  if (polyline.empty()) return std::numeric_limits<double>::infinity();
  if (polyline.size() == 1) return (p - polyline.front()).norm();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const Vec2 a = polyline[i - 1];
    const Vec2 ab = polyline[i] - a;
    const double len2 = ab.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (p - (a + t * ab)).norm());
  }
  return best;
}

Polygon2 circle_polygon(const Vec2& center, double radius, int sides) {
  Polygon2 poly;
  poly.reserve(sides);
  for (int i = 0; i < sides; ++i) {
    const double a = 2.0 * std::numbers::pi * i / sides;
    poly.emplace_back(center.x() + radius * std::cos(a), center.y() + radius * std::sin(a));
  }
  return poly;
}

Polygon2 oriented_rectangle(const Vec2& center, double length, double width, double heading_rad) {
  const Vec2 along(std::cos(heading_rad), std::sin(heading_rad));
  const Vec2 across(-along.y(), along.x());
  const Vec2 hl = along * (0.5 * length);
  const Vec2 hw = across * (0.5 * width);
  return {center - hl - hw, center + hl - hw, center + hl + hw, center - hl + hw};
}

}  // namespace junction
