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

#include "junction/perception/chain.hpp"

#include <cmath>
#include <set>

#include "junction/common/error.hpp"
#include "junction/sync/trigger_clock.hpp"

namespace junction::perception {

std::vector<Observation3D> observe_frame(const scene::Scenario& s,
                                         const std::vector<coverage::StereoPairSpec>& pairs,
                                         double t_s, std::int64_t trigger_utc_ns,
                                         const PerceptionConfig& config,
                                         std::size_t* detection_count) {
  std::map<int, std::vector<Detection2D>> dets;
  for (const auto& cam : s.cameras) {
    if (config.frame_available && !config.frame_available(cam.id, trigger_utc_ns)) continue;
    dets[cam.id] = synth_detect(s, cam, t_s, trigger_utc_ns, config.noise);
    if (detection_count) *detection_count += dets[cam.id].size();
  }
  ObserveOptions opt = config.observe;
  opt.sigma_px = config.noise.sigma_px;

  std::vector<Observation3D> out;
  for (const auto& pair : pairs) {
    const auto ia = dets.find(pair.cam_a);
    const auto ib = dets.find(pair.cam_b);
    if (ia == dets.end() || ib == dets.end()) continue;
    const auto* cam_a = scene::find_camera(s, pair.cam_a);
    const auto* cam_b = scene::find_camera(s, pair.cam_b);
    const auto matched = match_stereo(ia->second, ib->second, *cam_a, *cam_b, config.match_gate_px);
    for (const auto& m : matched.matches) {
      auto obs = observe({m}, *cam_a, *cam_b, pair, opt);
      if (obs.empty()) continue;
      auto& o = obs.front();
      for (const auto& kp : observe(keypoint_matches(m), *cam_a, *cam_b, pair, opt)) {
        o.keypoints_m[kp.part] = kp.position_m;
      }
      out.push_back(std::move(o));
    }
  }
  return out;
}

std::vector<Observation3D> fuse_with_keypoints(const std::vector<Observation3D>& obs,
                                               const FusionOptions& options) {
  std::vector<Observation3D> out;
  for (const auto& cluster : cluster_observations(obs, options)) {
    std::vector<Observation3D> members;
    for (auto i : cluster) members.push_back(obs[i]);
    Observation3D f = fuse_group(members);
    std::map<std::string, std::vector<Observation3D>> parts;
    for (const auto& m : members) {
      for (const auto& [name, p] : m.keypoints_m) {
        Observation3D kp = m;
        kp.position_m = p;
        kp.part = name;
        kp.keypoints_m.clear();
        parts[name].push_back(std::move(kp));
      }
    }
    f.keypoints_m.clear();
    for (const auto& [name, group] : parts) f.keypoints_m[name] = fuse_group(group).position_m;
    out.push_back(std::move(f));
  }
  return out;
}

PerceptionResult run_perception(const scene::Scenario& s, const PerceptionConfig& config) {
  validate_noise(config.noise);
  PerceptionResult r;
  if (config.pairs) {
    r.pairs = *config.pairs;
  } else if (s.cameras.size() >= 2) {
    r.pairs = coverage::enumerate_stereo_pairs(s);
  }
  const auto clock = sync::clock_for_rate(s.frame_rate_hz, config.start_utc_ns);
  const double duration = config.duration_s.value_or(s.duration_s);
  const auto n = sync::trigger_count(clock, duration);

  Tracker tracker(config.tracker);
  for (std::int64_t k = 0; k < n; ++k) {
    const std::int64_t trig = sync::trigger_time(clock, k);
    const double t_s = static_cast<double>(k * clock.period_ns) * 1e-9;
    const auto obs = observe_frame(s, r.pairs, t_s, trig, config, &r.detections);
    r.observations += obs.size();
    const auto fused = fuse_with_keypoints(obs, config.fusion);
    r.fused += fused.size();
    tracker.step(fused, trig);
    ++r.frames;
  }
  r.tracks = tracker.confirmed_tracks();
  r.accuracy = score_tracks(s, r.tracks, config.start_utc_ns);
  return r;
}

AccuracyReport score_tracks(const scene::Scenario& s, const std::vector<Track>& tracks,
                            std::int64_t start_utc_ns) {
  AccuracyReport rep;
  std::map<int, const scene::Actor*> actors;
  for (const auto& a : s.actors) actors[a.id] = &a;
  std::set<int> followed;
  double sum_sq = 0.0;
  double sum_var = 0.0;
  for (const auto& t : tracks) {
    if (!t.confirmed) continue;
    ++rep.confirmed_tracks;
    for (const auto& row : t.history) {
      if (!row.truth_actor_id) continue;
      const auto it = actors.find(*row.truth_actor_id);
      if (it == actors.end()) continue;
      const double t_s = static_cast<double>(row.trigger_utc_ns - start_utc_ns) * 1e-9;
      const auto pose = scene::actor_pose_at(*it->second, t_s);
      if (!pose) continue;
      const double e = std::hypot(row.x_m - pose->x_m, row.y_m - pose->y_m);
      rep.max_error_m = std::max(rep.max_error_m, e);
      sum_sq += e * e;
      sum_var += row.position_var_m2;
      ++rep.rows_evaluated;
      followed.insert(*row.truth_actor_id);
    }
  }
  if (rep.rows_evaluated > 0) {
    const double n = static_cast<double>(rep.rows_evaluated);
    rep.rmse_m = std::sqrt(sum_sq / n);
    rep.predicted_rmse_m = std::sqrt(sum_var / n);
  }
  rep.actors_tracked = followed.size();
  return rep;
}

}  // namespace junction::perception
