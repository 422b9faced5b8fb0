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

#include "junction/perception/detection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <variant>

#include "junction/common/digest.hpp"
#include "junction/common/error.hpp"
#include "junction/coverage/visibility.hpp"
#include "junction/sync/trigger_clock.hpp"

namespace junction::perception {

namespace {

constexpr std::array<double, 3> kSampleHeights{0.15, 0.5, 0.85};
constexpr std::array<double, 3> kSampleLateral{-0.8, 0.0, 0.8};
constexpr double kFalsePositiveW = 40.0;
constexpr double kFalsePositiveH = 80.0;

double half_width(const scene::ActorShape& shape) {
  if (const auto* c = std::get_if<scene::Cylinder>(&shape)) return c->radius_m;
  return 0.5 * std::get<scene::Box>(shape).width_m;
}

Polygon2 shape_box(const scene::Actor& a, const scene::ActorPose& pose) {
  if (const auto* c = std::get_if<scene::Cylinder>(&a.shape)) {
    return oriented_rectangle(Vec2(pose.x_m, pose.y_m), 2.0 * c->radius_m, 2.0 * c->radius_m, pose.heading_rad);
  }
  const auto& b = std::get<scene::Box>(a.shape);
  return oriented_rectangle(Vec2(pose.x_m, pose.y_m), b.length_m, b.width_m, pose.heading_rad);
}

struct ActorPrism {
  int actor_id;
  coverage::Prism prism;
};

std::vector<ActorPrism> actor_prisms(const scene::Scenario& s, double t_s) {
  std::vector<ActorPrism> out;
  for (const auto& a : s.actors) {
    if (const auto p = scene::actor_pose_at(a, t_s)) {
      out.push_back({a.id, coverage::Prism(scene::actor_footprint(a, *p), scene::shape_height(a.shape))});
    }
  }
  return out;
}

double occluded_fraction_at(const geometry::CameraModel& cam, const scene::Actor& actor,
                            const scene::ActorPose& pose, std::span<const coverage::Prism> statics,
                            std::span<const ActorPrism> actors) {
  const Vec3& c = cam.pose.position_m;
  Vec2 across(-(pose.y_m - c.y()), pose.x_m - c.x());
  across = across.norm() > 0.0 ? across.normalized() : Vec2(1.0, 0.0);
  const double h = scene::shape_height(actor.shape);
  const double hw = half_width(actor.shape);
  int blocked = 0;
  for (double fz : kSampleHeights) {
    for (double fl : kSampleLateral) {
      const Vec2 p = Vec2(pose.x_m, pose.y_m) + fl * hw * across;
      const Vec3 target(p.x(), p.y(), fz * h);
      bool clear = coverage::line_of_sight(c, target, statics);
      for (std::size_t i = 0; clear && i < actors.size(); ++i) {
        if (actors[i].actor_id != actor.id && actors[i].prism.intersects_segment(c, target)) clear = false;
      }
      if (!clear) ++blocked;
    }
  }
  return static_cast<double>(blocked) / 9.0;
}

}  // namespace

void validate_noise(const NoiseConfig& n) {
  if (!(n.sigma_px >= 0.0)) throw InvalidArgument("sigma_px must be non-negative");
  if (!(n.miss_base >= 0.0 && n.miss_base <= 1.0)) throw InvalidArgument("miss_base must lie in [0, 1]");
  if (!(n.occlusion_miss_threshold >= 0.0 && n.occlusion_miss_threshold <= 1.0)) {
    throw InvalidArgument("occlusion_miss_threshold must lie in [0, 1]");
  }
  if (!(n.fp_rate_per_frame >= 0.0)) throw InvalidArgument("fp_rate_per_frame must be non-negative");
}

const std::vector<std::string>& keypoint_names() {
  static const std::vector<std::string> names{"head", "pelvis", "feet"};
  return names;
}

Vec3 keypoint_position(const scene::Actor& actor, const scene::ActorPose& pose, const std::string& name) {
  const double h = scene::shape_height(actor.shape);
  double z = 0.0;
  if (name == "head") {
    z = 0.93 * h;
  } else if (name == "pelvis") {
    z = 0.53 * h;
  } else if (name != "feet") {
    throw InvalidArgument("unknown keypoint '" + name + "'");
  }
  return Vec3(pose.x_m, pose.y_m, z);
}

double occluded_fraction(const scene::Scenario& s, const geometry::CameraModel& cam,
                         const scene::Actor& actor, double t_s) {
  const auto pose = scene::actor_pose_at(actor, t_s);
  if (!pose) return 1.0;
  return occluded_fraction_at(cam, actor, *pose, coverage::make_prisms(s.occluders),
                              actor_prisms(s, t_s));
}

std::vector<Detection2D> synth_detect(const scene::Scenario& s, const geometry::CameraModel& cam,
                                      double t_s, const NoiseConfig& noise) {
  return synth_detect(s, cam, t_s, sync::seconds_to_ns(t_s), noise);
}

std::vector<Detection2D> synth_detect(const scene::Scenario& s, const geometry::CameraModel& cam,
                                      double t_s, std::int64_t trigger_utc_ns,
                                      const NoiseConfig& noise) {
  validate_noise(noise);
  std::mt19937_64 rng(derive_seed(s.seed, noise.seed, static_cast<std::uint64_t>(cam.id),
                                  static_cast<std::uint64_t>(trigger_utc_ns)));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto static_prisms = coverage::make_prisms(s.occluders);
  const auto moving = actor_prisms(s, t_s);
  const double visibility = scene::visibility_at(s.weather, t_s);

  std::vector<const scene::Actor*> actors;
  for (const auto& a : s.actors) actors.push_back(&a);
  std::sort(actors.begin(), actors.end(), [](auto* a, auto* b) { return a->id < b->id; });

  std::vector<Detection2D> out;
  for (const auto* actor : actors) {
    const auto pose = scene::actor_pose_at(*actor, t_s);
    if (!pose) continue;
    // Drawn for every live actor, detected or not.
    const double miss_draw = uniform(rng);
    const double nu = normal(rng);
    const double nv = normal(rng);
    const Vec3 ref(pose->x_m, pose->y_m, actor->ref_height_m);
    if (!coverage::visible(cam, ref, static_prisms)) continue;
    if ((ref - cam.pose.position_m).norm() > visibility) continue;
    if (occluded_fraction_at(cam, *actor, *pose, static_prisms, moving) > noise.occlusion_miss_threshold) {
      continue;
    }
    if (miss_draw < noise.miss_base) continue;

    const auto px = geometry::project(cam, ref);
    Detection2D d;
    d.camera_id = cam.id;
    d.trigger_utc_ns = trigger_utc_ns;
    d.center_px = {px->u + noise.sigma_px * nu, px->v + noise.sigma_px * nv};
    d.actor_class = actor->actor_class;
    d.truth_actor_id = actor->id;

    double u0 = INFINITY, v0 = INFINITY, u1 = -INFINITY, v1 = -INFINITY;
    const double h = scene::shape_height(actor->shape);
    for (const auto& p : shape_box(*actor, *pose)) {
      for (double z : {0.0, h}) {
        if (const auto q = geometry::project(cam, Vec3(p.x(), p.y(), z))) {
          u0 = std::min(u0, q->u);
          u1 = std::max(u1, q->u);
          v0 = std::min(v0, q->v);
          v1 = std::max(v1, q->v);
        }
      }
    }
    d.bbox_w_px = std::isfinite(u1 - u0) ? std::max(1.0, u1 - u0) : 1.0;
    d.bbox_h_px = std::isfinite(v1 - v0) ? std::max(1.0, v1 - v0) : 1.0;

    if (noise.keypoints && scene::is_vru(actor->actor_class)) {
      for (const auto& name : keypoint_names()) {
        const auto kp = geometry::project(cam, keypoint_position(*actor, *pose, name));
        const double ku = normal(rng);
        const double kv = normal(rng);
        if (!kp) continue;
        d.keypoints.push_back({name, {kp->u + noise.sigma_px * ku, kp->v + noise.sigma_px * kv}});
      }
    }
    out.push_back(std::move(d));
  }

  if (noise.fp_rate_per_frame > 0.0) {
    std::poisson_distribution<int> count(noise.fp_rate_per_frame);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      Detection2D d;
      d.camera_id = cam.id;
      d.trigger_utc_ns = trigger_utc_ns;
      d.center_px = {uniform(rng) * cam.intrinsics.width_px, uniform(rng) * cam.intrinsics.height_px};
      d.bbox_w_px = kFalsePositiveW;
      d.bbox_h_px = kFalsePositiveH;
      d.actor_class = scene::ActorClass::kPedestrian;
      out.push_back(std::move(d));
    }
  }
  return out;
}

}  // namespace junction::perception
