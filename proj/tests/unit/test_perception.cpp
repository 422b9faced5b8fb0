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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "junction/common/assignment.hpp"
#include "junction/common/error.hpp"
#include "junction/coverage/coverage.hpp"
#include "junction/geometry/triangulation.hpp"
#include "junction/io/scenario_io.hpp"
#include "junction/io/trajectory_io.hpp"
#include "junction/perception/chain.hpp"
#include "junction/scene/reference.hpp"
#include "oracles.hpp"
#include "scenes.hpp"

using namespace junction;
using namespace junction::perception;
using scene::ActorClass;

namespace {

Vec3 ref_point(const scene::Actor& a, double t) {
  const auto p = scene::actor_pose_at(a, t);
  return Vec3(p->x_m, p->y_m, a.ref_height_m);
}

scene::Scenario crossing() { return io::load_scenario(std::string(JUNCTION_DATA_DIR) + "/crossing_scenario.json"); }

// 90 degree pair with 20 m baseline observing a point about 30 m away.
struct PairRig {
  geometry::CameraModel a = scenes::camera(1, 0, -30, 6, 90, -9.5);
  geometry::CameraModel b = scenes::camera(2, -20, -10, 6, 26.6, -9.5);
  coverage::StereoPairSpec spec{1, 2, 0.0, 0.0};
  PairRig() {
    // Aim both cameras at (0, 0, 1).
    for (auto* c : {&a, &b}) {
      const Vec3 d = Vec3(0, 0, 1) - c->pose.position_m;
      c->pose.yaw_rad = std::atan2(d.y(), d.x());
      c->pose.pitch_rad = std::atan2(d.z(), d.head<2>().norm());
    }
    spec.axis_angle_deg = geometry::stereo_axis_angle(a, b);
  }
};

Detection2D det(int cam, geometry::Pixel px, std::int64_t t = 0, std::optional<int> truth = {}) {
  Detection2D d;
  d.camera_id = cam;
  d.trigger_utc_ns = t;
  d.center_px = px;
  d.bbox_w_px = 10;
  d.bbox_h_px = 30;
  d.truth_actor_id = truth;
  return d;
}

Observation3D obs_at(const Vec3& p, double var, std::int64_t t = 0) {
  Observation3D o;
  o.position_m = p;
  o.covariance_m2 = var * Mat3::Identity();
  o.trigger_utc_ns = t;
  return o;
}

}  // namespace

TEST(Detect, NoiselessSinglePedestrianAtExactProjection) {
  scene::Scenario s = scene::reference_scenario();
  s.actors.push_back(scenes::line_actor(1, ActorClass::kPedestrian, -12, -8, -12, 9, 1.4));
  NoiseConfig n;
  bool any = false;
  for (const auto& cam : s.cameras) {
    const auto d = synth_detect(s, cam, 2.0, n);
    if (!coverage::visible(cam, ref_point(s.actors[0], 2.0), s.occluders)) continue;
    if (d.empty()) continue;  // silhouette occlusion may still hide it
    any = true;
    ASSERT_EQ(d.size(), 1u);
    const auto px = *geometry::project(cam, ref_point(s.actors[0], 2.0));
    EXPECT_DOUBLE_EQ(d[0].center_px.u, px.u);
    EXPECT_DOUBLE_EQ(d[0].center_px.v, px.v);
    EXPECT_EQ(d[0].truth_actor_id, 1);
    EXPECT_GT(d[0].bbox_w_px, 0.0);
    EXPECT_GT(d[0].bbox_h_px, 0.0);
  }
  EXPECT_TRUE(any);
}

TEST(Detect, WeatherVisibilityGate) {
  scene::Scenario s;
  s.cameras.push_back(scenes::camera(1, 0, 0, 5, 0, -5));
  s.actors.push_back(scenes::line_actor(1, ActorClass::kPedestrian, 50, -1, 50, 1, 1.0));
  s.weather.timeline = {{0.0, 10.0, 0, 10}};
  EXPECT_TRUE(synth_detect(s, s.cameras[0], 0.5, NoiseConfig{}).empty());
  s.weather.timeline = {{0.0, 1000.0, 0, 10}};
  EXPECT_EQ(synth_detect(s, s.cameras[0], 0.5, NoiseConfig{}).size(), 1u);
}

TEST(Detect, OccludedActorIsMissed) {
  scene::Scenario s;
  s.cameras.push_back(scenes::camera(1, 0, 0, 3, 0, -3));
  s.actors.push_back(scenes::line_actor(1, ActorClass::kPedestrian, 30, -1, 30, 1, 1.0));
  scene::Occluder wall;
  wall.footprint = {Vec2(20, -5), Vec2(21, -5), Vec2(21, 5), Vec2(20, 5)};
  wall.height_m = 6.0;
  s.occluders.push_back(wall);
  EXPECT_TRUE(synth_detect(s, s.cameras[0], 0.5, NoiseConfig{}).empty());
  EXPECT_GT(occluded_fraction(s, s.cameras[0], s.actors[0], 0.5), 0.5);
}

TEST(Detect, MissRateMatchesProbability) {
  scene::Scenario s;
  s.duration_s = 1e4;
  s.cameras.push_back(scenes::camera(1, 0, 0, 5, 0, -5));
  s.actors.push_back(scenes::line_actor(1, ActorClass::kPedestrian, 30, 0, 30.001, 0, 1e-7));
  NoiseConfig n;
  n.miss_base = 0.1;
  n.seed = 3;
  int misses = 0;
  const int frames = 10000;
  for (int k = 0; k < frames; ++k) {
    misses += synth_detect(s, s.cameras[0], k * 0.04, static_cast<std::int64_t>(k) * 40'000'000, n).empty();
  }
  EXPECT_NEAR(misses / static_cast<double>(frames), 0.1, 0.01);
}

TEST(Detect, FalsePositivesAndDeterminism) {
  scene::Scenario s;
  s.cameras.push_back(scenes::camera(1, 0, 0, 5, 0, -5));
  NoiseConfig n;
  n.fp_rate_per_frame = 2.0;
  n.sigma_px = 1.0;
  std::size_t total = 0;
  for (int k = 0; k < 2000; ++k) {
    const auto d = synth_detect(s, s.cameras[0], 0.0, k, n);
    total += d.size();
    for (const auto& x : d) {
      EXPECT_FALSE(x.truth_actor_id);
      EXPECT_TRUE(geometry::inside_image(s.cameras[0].intrinsics, x.center_px));
    }
  }
  EXPECT_NEAR(total / 2000.0, 2.0, 0.15);
  const auto a = synth_detect(s, s.cameras[0], 0.0, 7, n);
  const auto b = synth_detect(s, s.cameras[0], 0.0, 7, n);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].center_px.u, b[i].center_px.u);
  NoiseConfig bad;
  bad.miss_base = 1.5;
  EXPECT_THROW(validate_noise(bad), InvalidArgument);
}

TEST(Epipolar, FundamentalMatrixAnnihilatesCorrespondences) {
  PairRig rig;
  const auto f = fundamental_matrix(rig.a, rig.b);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p(u(rng), u(rng), 1.0 + 0.2 * u(rng));
    const auto pa = *geometry::project(rig.a, p);
    const auto pb = *geometry::project(rig.b, p);
    EXPECT_LT(epipolar_distance(f, pa, pb), 1e-6);
  }
}

TEST(Matching, SingleActorAndGate) {
  PairRig rig;
  const Vec3 p(1, 2, 1);
  const auto pa = *geometry::project(rig.a, p);
  const auto pb = *geometry::project(rig.b, p);
  auto r = match_stereo({det(1, pa)}, {det(2, pb)}, rig.a, rig.b, 5.0);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_LT(r.matches[0].epipolar_px, 1e-6);
  r = match_stereo({det(1, pa)}, {det(2, {pb.u, pb.v + 400})}, rig.a, rig.b, 5.0);
  EXPECT_TRUE(r.matches.empty());
  EXPECT_EQ(r.unmatched_a.size(), 1u);
  EXPECT_EQ(r.unmatched_b.size(), 1u);
  EXPECT_THROW(match_stereo({det(1, pa, 0)}, {det(2, pb, 40)}, rig.a, rig.b, 5.0), InvalidArgument);
}

TEST(Matching, EqualsExhaustiveAssignment) {
  PairRig rig;
  const auto f = fundamental_matrix(rig.a, rig.b);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-8, 8);
  std::normal_distribution<double> noise(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int na = 1 + static_cast<int>(rng() % 4);
    const int nb = 1 + static_cast<int>(rng() % 4);
    std::vector<Detection2D> a, b;
    for (int i = 0; i < na; ++i) {
      const auto px = *geometry::project(rig.a, Vec3(u(rng), u(rng), 1));
      a.push_back(det(1, {px.u + noise(rng), px.v + noise(rng)}));
    }
    for (int i = 0; i < nb; ++i) {
      const auto px = *geometry::project(rig.b, Vec3(u(rng), u(rng), 1));
      b.push_back(det(2, {px.u + noise(rng), px.v + noise(rng)}));
    }
    const double gate = 20.0;
    std::vector<std::vector<double>> cost(na, std::vector<double>(nb));
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < nb; ++j) {
        const double d = epipolar_distance(f, a[i].center_px, b[j].center_px);
        cost[i][j] = d <= gate ? d : kForbidden;
      }
    }
    const auto [count, best] = oracle::assignment_optimum(cost);
    const auto r = match_stereo(a, b, rig.a, rig.b, gate);
    double total = 0.0;
    for (const auto& m : r.matches) total += m.epipolar_px;
    EXPECT_EQ(static_cast<int>(r.matches.size()), count);
    EXPECT_NEAR(total, best, 1e-9);
    EXPECT_EQ(r.matches.size() + r.unmatched_a.size(), a.size());
    EXPECT_EQ(r.matches.size() + r.unmatched_b.size(), b.size());
  }
}

TEST(Observe, NoiselessMatchIsExact) {
  PairRig rig;
  const Vec3 p(2, -3, 1);
  StereoMatch m{det(1, *geometry::project(rig.a, p)), det(2, *geometry::project(rig.b, p)), 0.0, ""};
  const auto o = observe({m}, rig.a, rig.b, rig.spec);
  ASSERT_EQ(o.size(), 1u);
  EXPECT_LT((o[0].position_m - p).norm(), 1e-6);
  const Mat3& c = o[0].covariance_m2;
  EXPECT_LT((c - c.transpose()).norm(), 1e-15);
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Mat3>(c).eigenvalues().minCoeff(), -1e-15);
}

TEST(Observe, MonteCarloWithinThreeTimesPropagation) {
  PairRig rig;
  const Vec3 p(0, 0, 1);
  ASSERT_NEAR((rig.a.pose.position_m - rig.b.pose.position_m).head<2>().norm(), 28.28, 0.01);
  const auto pa = *geometry::project(rig.a, p);
  const auto pb = *geometry::project(rig.b, p);
  ObserveOptions opt;
  opt.sigma_px = 0.5;
  StereoMatch clean{det(1, pa), det(2, pb), 0.0, ""};
  const auto nominal = observe({clean}, rig.a, rig.b, rig.spec, opt);
  ASSERT_EQ(nominal.size(), 1u);
  const double predicted = std::sqrt(nominal[0].covariance_m2.trace());
  std::mt19937_64 rng(77);
  std::normal_distribution<double> noise(0.0, 0.5);
  double sq = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    StereoMatch m{det(1, {pa.u + noise(rng), pa.v + noise(rng)}), det(2, {pb.u + noise(rng), pb.v + noise(rng)}), 0.0, ""};
    const auto o = observe({m}, rig.a, rig.b, rig.spec, opt);
    ASSERT_EQ(o.size(), 1u);
    sq += (o[0].position_m - p).squaredNorm();
  }
  const double rmse = std::sqrt(sq / n);
  EXPECT_LE(rmse, 3.0 * predicted);
  EXPECT_GE(rmse, predicted / 3.0);
}

TEST(Observe, CrossedMatchIsRejected) {
  PairRig rig;
  const auto pa = *geometry::project(rig.a, Vec3(0, 0, 1));
  const auto pb = *geometry::project(rig.b, Vec3(0, 0, 6));
  const double gap = geometry::triangulate_midpoint(geometry::backproject(rig.a, pa.u, pa.v),
                                                    geometry::backproject(rig.b, pb.u, pb.v))
                         .gap_m;
  ASSERT_GT(gap, ObserveOptions{}.gap_limit_m);
  StereoMatch crossed{det(1, pa), det(2, pb), 0.0, ""};
  EXPECT_TRUE(observe({crossed}, rig.a, rig.b, rig.spec).empty());
  ObserveOptions loose;
  loose.gap_limit_m = gap + 1.0;
  EXPECT_EQ(observe({crossed}, rig.a, rig.b, rig.spec, loose).size(), 1u);
}

TEST(Fusion, IdenticalObservationsHalveCovariance) {
  Mat3 c;
  c << 0.04, 0.01, 0, 0.01, 0.09, 0.02, 0, 0.02, 0.16;
  Observation3D a = obs_at(Vec3(1, 2, 1), 1.0);
  a.covariance_m2 = c;
  const std::vector<Observation3D> both{a, a};
  const auto f = fuse(both);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_LT((f[0].position_m - a.position_m).norm(), 1e-12);
  EXPECT_LT((f[0].covariance_m2 - c / 2).norm(), 1e-12);
  EXPECT_EQ(f[0].n_views, 2);
}

TEST(Fusion, FarObservationsStaySeparate) {
  const std::vector<Observation3D> o{obs_at(Vec3(0, 0, 1), 0.01), obs_at(Vec3(10, 0, 1), 0.01)};
  EXPECT_EQ(fuse(o).size(), 2u);
  std::vector<Observation3D> mixed{obs_at(Vec3(0, 0, 1), 0.01), obs_at(Vec3(0, 0, 1), 0.01, 40)};
  EXPECT_THROW(fuse(mixed), InvalidArgument);
  std::vector<Observation3D> singular{obs_at(Vec3(0, 0, 1), 0.0), obs_at(Vec3(0, 0, 1), 0.01)};
  EXPECT_THROW(fuse(singular), DegenerateObservation);
}

TEST(Fusion, TraceNeverExceedsBestContributor) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Observation3D> o;
    double best = 1e9;
    const int n = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      Eigen::Matrix3d a = Eigen::Matrix3d::Random() * u(rng);
      Observation3D x = obs_at(Vec3(0.01 * u(rng), 0, 1), 0.0);
      x.covariance_m2 = a * a.transpose() + 0.01 * Mat3::Identity();
      best = std::min(best, x.covariance_m2.trace());
      o.push_back(x);
    }
    const auto f = fuse_group(o);
    EXPECT_LE(f.covariance_m2.trace(), best + 1e-12);
  }
}

TEST(Fusion, SevenPairFusionBeatsBestSinglePair) {
  const auto s = scenes::seven_pair_scene();
  const auto pairs = coverage::enumerate_stereo_pairs(s);
  ASSERT_EQ(pairs.size(), 7u);
  const Vec3 truth = ref_point(s.actors[0], 1.0);

  PerceptionConfig cfg;
  cfg.noise.sigma_px = 0.5;
  std::map<std::pair<int, int>, std::pair<double, int>> single;
  double fused_sq = 0.0;
  int all_seven = 0;
  const int trials = 1000;
  for (int trial = 0; trial < trials; ++trial) {
    cfg.noise.seed = static_cast<std::uint64_t>(trial);
    const auto obs = observe_frame(s, pairs, 1.0, 0, cfg);
    for (const auto& o : obs) {
      auto& e = single[{o.pair.cam_a, o.pair.cam_b}];
      e.first += (o.position_m - truth).squaredNorm();
      ++e.second;
    }
    const auto f = fuse(obs, cfg.fusion);
    ASSERT_FALSE(f.empty());
    // The reported estimate is the one backed by the most stereo systems.
    const auto best_f = std::max_element(f.begin(), f.end(), [](const auto& x, const auto& y) { return x.n_views < y.n_views; });
    all_seven += best_f->n_views == 7;
    fused_sq += (best_f->position_m - truth).squaredNorm();
  }
  ASSERT_EQ(single.size(), 7u);
  double best = 1e9;
  for (const auto& [pair, e] : single) {
    EXPECT_EQ(e.second, trials);
    best = std::min(best, std::sqrt(e.first / e.second));
  }
  EXPECT_GE(all_seven, 950);
  EXPECT_LE(std::sqrt(fused_sq / trials), best);
}

TEST(Tracker, StationaryNoiselessConverges) {
  TrackerConfig cfg;
  std::vector<Track> tracks;
  int next = 1;
  const Vec3 p(3, 4, 1);
  for (int k = 0; k < 10; ++k) {
    const std::vector<Observation3D> o{obs_at(p, 1e-4, k * 40'000'000LL)};
    tracks = track_step(std::move(tracks), o, 0.04, k * 40'000'000LL, cfg, next);
  }
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_TRUE(tracks[0].confirmed);
  EXPECT_LT((tracks[0].state.head<2>() - p.head<2>()).norm(), 1e-6);
  EXPECT_LT(tracks[0].state.tail<2>().norm(), 1e-6);
  const auto& cov = tracks[0].covariance;
  EXPECT_LT((cov - cov.transpose()).norm(), 1e-12);
}

TEST(Tracker, ConstantVelocityEstimate) {
  TrackerConfig cfg;
  std::vector<Track> tracks;
  int next = 1;
  for (int k = 0; k < 25; ++k) {
    const double t = k * 0.04;
    const std::vector<Observation3D> o{obs_at(Vec3(2.0 * t, 1.0, 1.0), 1e-6, k * 40'000'000LL)};
    tracks = track_step(std::move(tracks), o, 0.04, k * 40'000'000LL, cfg, next);
  }
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_NEAR(tracks[0].state(2), 2.0, 1e-3);
  EXPECT_NEAR(tracks[0].state(3), 0.0, 1e-3);
  for (std::size_t i = 1; i < tracks[0].history.size(); ++i) {
    EXPECT_LT(tracks[0].history[i - 1].trigger_utc_ns, tracks[0].history[i].trigger_utc_ns);
  }
}

namespace {

// Actor walking at 1.2 m/s along x, hidden for frames [40, 90).
std::vector<Track> run_occlusion(int max_misses) {
  TrackerConfig cfg;
  cfg.max_misses = max_misses;
  Tracker tracker(cfg);
  for (int k = 0; k < 140; ++k) {
    const double t = k * 0.04;
    std::vector<Observation3D> o;
    if (k < 40 || k >= 90) {
      o.push_back(obs_at(Vec3(-5 + 1.2 * t, 2.0, 1.0), 1e-4, k * 40'000'000LL));
      o.back().truth_actor_id = 1;
    }
    tracker.step(o, k * 40'000'000LL);
  }
  return tracker.confirmed_tracks();
}

}  // namespace

TEST(Tracker, CoastThroughOcclusionKeepsId) {
  const auto kept = run_occlusion(60);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].id, 1);
  EXPECT_EQ(kept[0].history.back().trigger_utc_ns, 139 * 40'000'000LL);
  int coasted = 0;
  for (const auto& r : kept[0].history) coasted += r.n_views == 0;
  EXPECT_EQ(coasted, 50);
  const auto split = run_occlusion(25);
  EXPECT_EQ(split.size(), 2u);
}

TEST(Tracker, TentativeTracksNeedThreeHits) {
  TrackerConfig cfg;
  std::vector<Track> tracks;
  int next = 1;
  for (int k = 0; k < 2; ++k) {
    const std::vector<Observation3D> o{obs_at(Vec3(0, 0, 1), 1e-4)};
    tracks = track_step(std::move(tracks), o, 0.04, k, cfg, next);
  }
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_FALSE(tracks[0].confirmed);
  tracks = track_step(std::move(tracks), std::vector<Observation3D>{}, 0.04, 3, cfg, next);
  EXPECT_TRUE(tracks.empty());
}

TEST(Tracker, RejectsNonIncreasingTime) {
  Tracker t;
  t.step(std::vector<Observation3D>{}, 100);
  EXPECT_THROW(t.step(std::vector<Observation3D>{}, 100), InvalidArgument);
}

TEST(EndToEnd, NoiselessWithinMillimetre) {
  const auto s = crossing();
  PerceptionConfig cfg;
  cfg.noise.keypoints = true;
  const auto r = run_perception(s, cfg);
  EXPECT_EQ(r.pairs.size(), 7u);
  EXPECT_EQ(r.accuracy.actors_tracked, s.actors.size());
  EXPECT_GT(r.accuracy.rows_evaluated, 500u);
  EXPECT_LT(r.accuracy.max_error_m, 1e-3);
  // Keypoints come from the same triangulation path.
  bool checked = false;
  for (const auto& t : r.tracks) {
    const auto& actor = *std::find_if(s.actors.begin(), s.actors.end(), [&](const auto& a) { return a.id == *t.truth_actor_id; });
    for (const auto& row : t.history) {
      const auto pose = scene::actor_pose_at(actor, row.trigger_utc_ns * 1e-9);
      if (!pose) continue;
      for (const auto& [name, pos] : row.keypoints_m) {
        EXPECT_LT((pos - keypoint_position(actor, *pose, name)).norm(), 1e-4) << name;
        checked = true;
      }
    }
  }
  EXPECT_TRUE(checked);
}

TEST(EndToEnd, NoisyRmseWithinPropagationAndDeterministic) {
  const auto s = crossing();
  PerceptionConfig cfg;
  cfg.noise.sigma_px = 0.5;
  cfg.noise.seed = 1;
  const auto a = run_perception(s, cfg);
  EXPECT_EQ(a.tracks.size(), s.actors.size());
  EXPECT_GT(a.accuracy.rmse_m, 0.0);
  EXPECT_LE(a.accuracy.rmse_m, a.accuracy.predicted_rmse_m);
  const auto b = run_perception(s, cfg);
  EXPECT_EQ(io::write_trajectories(io::trajectory_records(a.tracks)),
            io::write_trajectories(io::trajectory_records(b.tracks)));
}

TEST(EndToEnd, EmptyScenarioHasNoTracks) {
  auto s = scene::reference_scenario();
  s.duration_s = 2.0;
  const auto r = run_perception(s);
  EXPECT_TRUE(r.tracks.empty());
  EXPECT_EQ(r.accuracy.rows_evaluated, 0u);
}

TEST(Export, RowsEqualHistoryAndRoundTrip) {
  EXPECT_EQ(io::read_trajectories(io::write_trajectories({})).size(), 0u);
  const auto s = crossing();
  PerceptionConfig cfg;
  cfg.duration_s = 3.0;
  cfg.noise.keypoints = true;
  const auto r = run_perception(s, cfg);
  ASSERT_FALSE(r.tracks.empty());
  const auto rec = io::trajectory_records({r.tracks[0]});
  ASSERT_EQ(rec.size(), r.tracks[0].history.size());
  for (std::size_t i = 0; i < rec.size(); ++i) {
    EXPECT_EQ(rec[i].trigger_utc_ns, r.tracks[0].history[i].trigger_utc_ns);
    EXPECT_EQ(rec[i].x_m, r.tracks[0].history[i].x_m);
    EXPECT_EQ(rec[i].n_views, r.tracks[0].history[i].n_views);
  }
  const auto all = io::trajectory_records(r.tracks);
  const std::string text = io::write_trajectories(all);
  const auto back = io::read_trajectories(text);
  EXPECT_EQ(io::write_trajectories(back), text);
}
