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

#include "junction/pipeline/encoder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <variant>

#include "junction/common/error.hpp"

namespace junction::pipeline {

EncodedChunk encode_chunk(std::span<const FrameMessage> frames, const RatioModel& model) {
  if (frames.empty()) throw InvalidArgument("cannot encode an empty chunk");
  if (!(model.r_min >= 1.0) || !(model.r_max >= model.r_min)) {
    throw InvalidArgument("ratio model needs 1 <= r_min <= r_max");
  }
  EncodedChunk c;
  c.camera_id = frames.front().stamp.camera_id;
  c.first_seq = static_cast<std::uint64_t>(frames.front().stamp.seq);
  double activity_sum = 0.0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    if (f.stamp.camera_id != c.camera_id) throw InvalidArgument("chunk mixes cameras");
    if (f.stamp.seq != frames.front().stamp.seq + static_cast<std::int64_t>(i)) {
      throw InvalidArgument("chunk has a sequence gap at seq " + std::to_string(f.stamp.seq));
    }
    if (!(f.activity >= 0.0 && f.activity <= 1.0)) throw InvalidArgument("activity outside [0, 1]");
    c.raw_bytes += f.payload_bytes;
    activity_sum += f.activity;
  }
  c.frame_count = static_cast<std::uint32_t>(frames.size());
  const double r = model.ratio(activity_sum / static_cast<double>(frames.size()));
  c.encoded_bytes = static_cast<std::uint64_t>(std::llround(static_cast<double>(c.raw_bytes) / r));
  return c;
}

std::int64_t encode_service_ns(std::uint32_t frame_count, double worker_throughput_fps) {
  if (!(worker_throughput_fps > 0.0)) throw InvalidArgument("worker throughput must be positive");
  return std::llround(static_cast<double>(frame_count) * 1e9 / worker_throughput_fps);
}

double frame_activity(const scene::Scenario& s, const geometry::CameraModel& cam, double t_s) {
  const auto& intr = cam.intrinsics;
  double covered = 0.0;
  for (const auto& actor : s.actors) {
    const auto pose = scene::actor_pose_at(actor, t_s);
    if (!pose || pose->speed_mps <= 0.0) continue;
    double length = 0.0;
    double width = 0.0;
    if (const auto* cyl = std::get_if<scene::Cylinder>(&actor.shape)) {
      length = width = 2.0 * cyl->radius_m;
    } else {
      const auto& box = std::get<scene::Box>(actor.shape);
      length = box.length_m;
      width = box.width_m;
    }
    const double h = scene::shape_height(actor.shape);
    const Polygon2 base = oriented_rectangle(Vec2(pose->x_m, pose->y_m), length, width, pose->heading_rad);
    double u0 = INFINITY, v0 = INFINITY, u1 = -INFINITY, v1 = -INFINITY;
    bool behind = false;
    for (const auto& p : base) {
      for (double z : {0.0, h}) {
        const auto px = geometry::project(cam, Vec3(p.x(), p.y(), z));
        if (!px) {
          behind = true;
          break;
        }
        u0 = std::min(u0, px->u);
        u1 = std::max(u1, px->u);
        v0 = std::min(v0, px->v);
        v1 = std::max(v1, px->v);
      }
      if (behind) break;
    }
    if (behind) continue;
    const double w = std::clamp(u1, 0.0, double(intr.width_px)) - std::clamp(u0, 0.0, double(intr.width_px));
    const double hh = std::clamp(v1, 0.0, double(intr.height_px)) - std::clamp(v0, 0.0, double(intr.height_px));
    covered += std::max(0.0, w) * std::max(0.0, hh);
  }
  return std::min(1.0, covered / (static_cast<double>(intr.width_px) * intr.height_px));
}

}  // namespace junction::pipeline
