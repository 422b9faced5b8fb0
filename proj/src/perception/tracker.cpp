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

#include "junction/perception/tracker.hpp"

#include <algorithm>
#include <cmath>

#include "junction/common/assignment.hpp"
#include "junction/common/error.hpp"

namespace junction::perception {

namespace {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

void predict(Track& t, double dt, double sigma_a) {
  Mat4 f = Mat4::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;
  const double q = sigma_a * sigma_a;
  const double dt2 = dt * dt;
  const double dt3 = dt2 * dt;
  const double dt4 = dt3 * dt;
  Mat4 qm = Mat4::Zero();
  qm(0, 0) = qm(1, 1) = dt4 / 4.0 * q;
  qm(0, 2) = qm(2, 0) = qm(1, 3) = qm(3, 1) = dt3 / 2.0 * q;
  qm(2, 2) = qm(3, 3) = dt2 * q;
  t.state = f * t.state;
  t.covariance = f * t.covariance * f.transpose() + qm;
}

Mat2 measurement_noise(const Observation3D& o, const TrackerConfig& config) {
  const double scale = config.correlation_safe ? std::max(1, o.n_views) : 1.0;
  return scale * o.covariance_m2.topLeftCorner<2, 2>();
}

TrackRow row_of(const Track& t, std::int64_t ns, int n_views) {
  TrackRow r{ns, t.state[0], t.state[1], t.state[2], t.state[3], n_views, {}, 0.0, t.truth_actor_id};
  r.position_var_m2 = t.covariance(0, 0) + t.covariance(1, 1);
  return r;
}

}  // namespace

std::vector<Track> track_step(std::vector<Track> tracks, std::span<const Observation3D> fused,
                              double dt_s, std::int64_t trigger_utc_ns, const TrackerConfig& config,
                              int& next_id, std::vector<Track>* retired) {
  if (!(dt_s > 0.0)) throw InvalidArgument("tracker time step must be positive");
  for (auto& t : tracks) predict(t, dt_s, config.sigma_a);

  const double gate2 = config.gate * config.gate;
  std::vector<std::vector<double>> cost(tracks.size(), std::vector<double>(fused.size(), kForbidden));
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    const Mat2 p = tracks[i].covariance.topLeftCorner<2, 2>();
    for (std::size_t j = 0; j < fused.size(); ++j) {
      if (fused[j].actor_class != tracks[i].actor_class) continue;
      const Eigen::Vector2d nu = fused[j].position_m.head<2>() - tracks[i].state.head<2>();
      const Mat2 s = p + measurement_noise(fused[j], config);
      const double m2 = nu.dot(s.ldlt().solve(nu));
      // Negative log-likelihood up to a constant: uncertain tentative tracks
      // lose ties against settled ones.
      if (m2 < gate2) cost[i][j] = m2 + std::log(s.determinant());
    }
  }
  double lowest = 0.0;
  for (const auto& row : cost) {
    for (double c : row) {
      if (std::isfinite(c)) lowest = std::min(lowest, c);
    }
  }
  for (auto& row : cost) {
    for (double& c : row) {
      if (std::isfinite(c)) c -= lowest;
    }
  }
  AssignmentResult sol;
  if (!tracks.empty() && !fused.empty()) {
    sol = solve_assignment(cost);
  } else {
    sol.row_to_col.assign(tracks.size(), -1);
    sol.col_to_row.assign(fused.size(), -1);
  }

  std::vector<Track> out;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    Track t = std::move(tracks[i]);
    ++t.age_frames;
    const int j = sol.row_to_col[i];
    if (j >= 0) {
      const auto& o = fused[static_cast<std::size_t>(j)];
      Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
      h(0, 0) = 1.0;
      h(1, 1) = 1.0;
      const Mat2 s = h * t.covariance * h.transpose() + measurement_noise(o, config);
      const Eigen::Matrix<double, 4, 2> k = t.covariance * h.transpose() * s.inverse();
      const Eigen::Vector2d nu = o.position_m.head<2>() - t.state.head<2>();
      t.state += k * nu;
      const Mat4 ikh = Mat4::Identity() - k * h;
      t.covariance = ikh * t.covariance * ikh.transpose() + k * measurement_noise(o, config) * k.transpose();
      t.covariance = 0.5 * (t.covariance + t.covariance.transpose()).eval();
      ++t.hits;
      t.misses_in_row = 0;
      if (t.hits >= config.confirm_hits) t.confirmed = true;
      t.truth_actor_id = o.truth_actor_id;
      TrackRow r = row_of(t, trigger_utc_ns, o.n_views);
      r.keypoints_m = o.keypoints_m;
      t.history.push_back(std::move(r));
      out.push_back(std::move(t));
      continue;
    }
    ++t.misses_in_row;
    t.history.push_back(row_of(t, trigger_utc_ns, 0));
    if (!t.confirmed) continue;
    if (t.misses_in_row >= config.max_misses) {
      if (retired) retired->push_back(std::move(t));
      continue;
    }
    out.push_back(std::move(t));
  }

  for (std::size_t j = 0; j < fused.size(); ++j) {
    if (sol.col_to_row[j] >= 0) continue;
    const auto& o = fused[j];
    Track t;
    t.id = next_id++;
    t.actor_class = o.actor_class;
    t.state << o.position_m.x(), o.position_m.y(), 0.0, 0.0;
    t.covariance = Mat4::Zero();
    t.covariance.topLeftCorner<2, 2>() = measurement_noise(o, config);
    t.covariance(2, 2) = t.covariance(3, 3) = config.init_velocity_sd * config.init_velocity_sd;
    t.age_frames = 1;
    t.hits = 1;
    t.confirmed = t.hits >= config.confirm_hits;
    t.truth_actor_id = o.truth_actor_id;
    TrackRow r = row_of(t, trigger_utc_ns, o.n_views);
    r.keypoints_m = o.keypoints_m;
    t.history.push_back(std::move(r));
    out.push_back(std::move(t));
  }
  return out;
}

void Tracker::step(std::span<const Observation3D> fused, std::int64_t trigger_utc_ns) {
  if (last_ns_ && trigger_utc_ns <= *last_ns_) {
    throw InvalidArgument("tracker steps must advance in time");
  }
  const double dt = last_ns_ ? static_cast<double>(trigger_utc_ns - *last_ns_) * 1e-9 : 1e-9;
  if (!last_ns_) {
    // First frame: no prediction needed, only births.
    active_ = track_step({}, fused, dt, trigger_utc_ns, config_, next_id_, &retired_);
  } else {
    active_ = track_step(std::move(active_), fused, dt, trigger_utc_ns, config_, next_id_, &retired_);
  }
  last_ns_ = trigger_utc_ns;
}

std::vector<Track> Tracker::confirmed_tracks() const {
  std::vector<Track> out;
  for (const auto& t : retired_) out.push_back(t);
  for (const auto& t : active_) {
    if (t.confirmed) out.push_back(t);
  }
  std::sort(out.begin(), out.end(), [](const Track& a, const Track& b) { return a.id < b.id; });
  return out;
}

}  // namespace junction::perception
