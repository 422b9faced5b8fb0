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

#include "junction/perception/fusion.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <numeric>

#include "junction/common/error.hpp"

namespace junction::perception {

namespace {

constexpr double kSingularRatio = 1e-15;

Mat3 checked_inverse(const Mat3& c) {
  if (!c.allFinite()) throw DegenerateObservation("covariance has non-finite entries");
  const Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (c + c.transpose()));
  const auto& ev = es.eigenvalues();
  if (!(ev.minCoeff() > 0.0) || ev.minCoeff() <= kSingularRatio * ev.maxCoeff()) {
    throw DegenerateObservation("singular observation covariance");
  }
  return es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

std::vector<std::vector<std::size_t>> cluster_observations(std::span<const Observation3D> obs,
                                                           const FusionOptions& options) {
  for (const auto& o : obs) {
    if (o.trigger_utc_ns != obs.front().trigger_utc_ns) {
      throw InvalidArgument("fusion needs observations of one trigger time");
    }
    checked_inverse(o.covariance_m2);
  }
  std::vector<std::size_t> parent(obs.size());
  std::iota(parent.begin(), parent.end(), 0);
  const double gate2 = options.gate * options.gate;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t j = i + 1; j < obs.size(); ++j) {
      if (obs[i].actor_class != obs[j].actor_class || obs[i].part != obs[j].part) continue;
      const Vec3 d = obs[i].position_m - obs[j].position_m;
      const Mat3 s = obs[i].covariance_m2 + obs[j].covariance_m2;
      const double m2 = d.dot(checked_inverse(s) * d);
      if (m2 < gate2) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const std::size_t r = find_root(parent, i);
    if (groups[r].empty()) order.push_back(r);
    groups[r].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t r : order) out.push_back(std::move(groups[r]));
  return out;
}

Observation3D fuse_group(std::span<const Observation3D> obs) {
  if (obs.empty()) throw InvalidArgument("cannot fuse an empty group");
  if (obs.size() == 1) return obs.front();
  Mat3 info = Mat3::Zero();
  Vec3 weighted = Vec3::Zero();
  for (const auto& o : obs) {
    const Mat3 inv = checked_inverse(o.covariance_m2);
    info += inv;
    weighted += inv * o.position_m;
  }
  Observation3D f;
  f.covariance_m2 = checked_inverse(info);
  f.covariance_m2 = 0.5 * (f.covariance_m2 + f.covariance_m2.transpose()).eval();
  f.position_m = f.covariance_m2 * weighted;
  f.trigger_utc_ns = obs.front().trigger_utc_ns;
  f.actor_class = obs.front().actor_class;
  f.part = obs.front().part;
  f.n_views = 0;
  f.gap_m = 0.0;
  for (const auto& o : obs) {
    f.n_views += o.n_views;
    f.gap_m = std::max(f.gap_m, o.gap_m);
  }
  // Truth link survives only when every member agrees.
  f.truth_actor_id = obs.front().truth_actor_id;
  for (const auto& o : obs) {
    if (o.truth_actor_id != f.truth_actor_id) f.truth_actor_id.reset();
  }
  return f;
}

std::vector<Observation3D> fuse(std::span<const Observation3D> obs, const FusionOptions& options) {
  std::vector<Observation3D> out;
  for (const auto& group : cluster_observations(obs, options)) {
    std::vector<Observation3D> members;
    for (std::size_t i : group) members.push_back(obs[i]);
    out.push_back(fuse_group(members));
  }
  return out;
}

}  // namespace junction::perception
