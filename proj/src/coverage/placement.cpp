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

#include "junction/coverage/placement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "junction/common/error.hpp"
#include "junction/coverage/coverage.hpp"
#include "junction/geometry/triangulation.hpp"

namespace junction::coverage {

double objective_value(const CoverageMetrics& m, const ObjectiveWeights& w) {
  double crosswalk = 0.0;
  for (const auto& c : m.crosswalks) crosswalk += c.stereo_fraction;
  if (!m.crosswalks.empty()) crosswalk /= static_cast<double>(m.crosswalks.size());
  double approach = 0.0;
  for (const auto& a : m.approaches) approach += a.length_m > 0.0 ? a.covered_m / a.length_m : 0.0;
  if (!m.approaches.empty()) approach /= static_cast<double>(m.approaches.size());
  return w.stereo_inner * m.stereo_fraction_inner + w.crosswalk * crosswalk +
         w.approach * approach + w.bicycle_lane * m.bicycle_lane_stereo_fraction;
}

std::vector<double> yaw_offsets(const PlacementOptions& options) {
  std::vector<double> offsets;
  const int steps = std::max(1, options.yaw_steps);
  const int center = (steps - 1) / 2;
  for (int k = 0; k < steps; ++k) {
    offsets.push_back(geometry::deg_to_rad(options.yaw_step_deg * (k - center)));
  }
  return offsets;
}

geometry::CameraModel candidate_camera(const PlacementCandidate& c, int id,
                                       const PlacementOptions& options) {
  geometry::CameraModel cam;
  cam.id = id;
  cam.intrinsics = options.intrinsics;
  cam.max_range_m = options.max_range_m;
  cam.pose.position_m = Vec3(c.position_m.x(), c.position_m.y(), c.height_m);
  cam.pose.yaw_rad = c.yaw_rad;
  cam.pose.pitch_rad = c.pitch_rad;
  return cam;
}

namespace {

constexpr double kImprovementEps = 1e-12;

struct Choice {
  int candidate = 0;
  int yaw_index = 0;
  PlacementCandidate placed;
  geometry::CameraModel camera;
  std::vector<std::uint8_t> eval_map;
  std::vector<std::uint8_t> overlap_map;  // empty when the grids coincide
};

class Evaluator {
 public:
  Evaluator(const scene::Scenario& s, std::vector<Choice> choices, const GridSpec& eval_grid,
            const GridSpec& overlap_grid, const ObjectiveWeights& weights,
            const PairConstraints& constraints)
      : choices_(std::move(choices)),
        eval_grid_(eval_grid),
        overlap_grid_(overlap_grid),
        index_(eval_grid, s.layout),
        weights_(weights),
        constraints_(constraints) {}

  const std::vector<Choice>& choices() const { return choices_; }

  double objective(const std::vector<int>& selection) {
    std::vector<int> key = selection;
    std::sort(key.begin(), key.end());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const double value = objective_value(metrics(key), weights_);
    memo_.emplace(std::move(key), value);
    return value;
  }

  CoverageMetrics metrics(const std::vector<int>& selection) const {
    CoverageGrid grid;
    grid.spec = eval_grid_;
    grid.cells.assign(eval_grid_.cell_count(), CellRecord{});
    for (std::size_t slot = 0; slot < selection.size(); ++slot) {
      const auto& map = choices_[selection[slot]].eval_map;
      const std::uint64_t bit = camera_bit(static_cast<int>(slot) + 1);
      for (std::size_t c = 0; c < map.size(); ++c) {
        if (map[c]) grid.cells[c].visible_mask |= bit;
      }
    }
    finalize_cells(grid, pairs(selection));
    return index_.evaluate(grid);
  }

 private:
  std::vector<StereoPairSpec> pairs(const std::vector<int>& selection) const {
    std::vector<StereoPairSpec> out;
    const double cell_area = overlap_grid_.cell_m * overlap_grid_.cell_m;
    for (std::size_t a = 0; a < selection.size(); ++a) {
      for (std::size_t b = a + 1; b < selection.size(); ++b) {
        const auto& ca = choices_[selection[a]];
        const auto& cb = choices_[selection[b]];
        double angle = 0.0;
        try {
          angle = geometry::stereo_axis_angle(ca.camera, cb.camera);
        } catch (const DegenerateGeometry&) {
          continue;
        }
        if (!angle_in_window(angle, constraints_)) continue;
        const auto& ma = ca.overlap_map.empty() ? ca.eval_map : ca.overlap_map;
        const auto& mb = cb.overlap_map.empty() ? cb.eval_map : cb.overlap_map;
        std::size_t joint = 0;
        for (std::size_t c = 0; c < ma.size(); ++c) joint += ma[c] & mb[c];
        const double overlap = static_cast<double>(joint) * cell_area;
        if (joint == 0 || overlap < constraints_.min_overlap_m2) continue;
        out.push_back({static_cast<int>(a) + 1, static_cast<int>(b) + 1, angle, overlap});
      }
    }
    return out;
  }

  std::vector<Choice> choices_;
  GridSpec eval_grid_;
  GridSpec overlap_grid_;
  ReportIndex index_;
  ObjectiveWeights weights_;
  PairConstraints constraints_;
  std::map<std::vector<int>, double> memo_;
};

bool uses_candidate(const std::vector<Choice>& choices, const std::vector<int>& sel, int candidate,
                    std::size_t skip_slot) {
  for (std::size_t s = 0; s < sel.size(); ++s) {
    if (s != skip_slot && choices[sel[s]].candidate == candidate) return true;
  }
  return false;
}

// Strict-improvement local search; scans moves in a fixed order and takes
// the first improving one.
double local_search(Evaluator& ev, std::vector<int>& sel) {
  const auto& choices = ev.choices();
  const int m = static_cast<int>(choices.size());
  double best = ev.objective(sel);
  const std::size_t pair_budget = 200'000;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t slot = 0; slot < sel.size() && !improved; ++slot) {
      for (int c = 0; c < m && !improved; ++c) {
        if (c == sel[slot] || uses_candidate(choices, sel, choices[c].candidate, slot)) continue;
        const int prev = sel[slot];
        sel[slot] = c;
        const double v = ev.objective(sel);
        if (v > best + kImprovementEps) {
          best = v;
          improved = true;
        } else {
          sel[slot] = prev;
        }
      }
    }
    if (improved) continue;
    const std::size_t n = sel.size();
    if (n < 2 || (n * (n - 1) / 2) * static_cast<std::size_t>(m) * m > pair_budget) break;
    for (std::size_t s1 = 0; s1 < n && !improved; ++s1) {
      for (std::size_t s2 = s1 + 1; s2 < n && !improved; ++s2) {
        const int p1 = sel[s1];
        const int p2 = sel[s2];
        for (int c1 = 0; c1 < m && !improved; ++c1) {
          for (int c2 = 0; c2 < m && !improved; ++c2) {
            if (c1 == p1 && c2 == p2) continue;
            const int cand1 = choices[c1].candidate;
            const int cand2 = choices[c2].candidate;
            if (cand1 == cand2) continue;
            bool clash = false;
            for (std::size_t s = 0; s < n && !clash; ++s) {
              if (s == s1 || s == s2) continue;
              const int cand = choices[sel[s]].candidate;
              clash = cand == cand1 || cand == cand2;
            }
            if (clash) continue;
            sel[s1] = c1;
            sel[s2] = c2;
            const double v = ev.objective(sel);
            if (v > best + kImprovementEps) {
              best = v;
              improved = true;
            } else {
              sel[s1] = p1;
              sel[s2] = p2;
            }
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

PlacementResult optimize_placement(const scene::Scenario& s,
                                   std::span<const PlacementCandidate> candidates, int n_cameras,
                                   const ObjectiveWeights& weights,
                                   const PlacementOptions& options) {
  if (n_cameras < 1) throw InvalidArgument("n_cameras must be at least 1");
  if (static_cast<int>(candidates.size()) < n_cameras) {
    throw InvalidArgument("fewer candidates than cameras to place");
  }
  if (n_cameras > 64) throw InvalidArgument("at most 64 cameras can be placed");
  if (options.installation_limits) {
    for (const auto& c : candidates) {
      if (c.height_m > scene::kMaxMountHeightM) {
        throw InvalidArgument("candidate on pole " + std::to_string(c.pole_id) +
                              " exceeds the 8 m mounting limit");
      }
    }
  }

  const GridSpec overlap_grid = default_grid_spec(s, options.constraints.overlap_cell_m);
  const GridSpec eval_grid = options.grid ? *options.grid : overlap_grid;
  const bool shared_grid = eval_grid == overlap_grid;
  const auto prisms = make_prisms(s.occluders);
  const auto offsets = yaw_offsets(options);

  // Nominal yaw first, then growing offsets, so ties favour small turns.
  std::vector<int> yaw_order(offsets.size());
  std::iota(yaw_order.begin(), yaw_order.end(), 0);
  std::stable_sort(yaw_order.begin(), yaw_order.end(), [&](int a, int b) {
    return std::abs(offsets[a]) < std::abs(offsets[b]) - 1e-15;
  });

  std::vector<Choice> choices;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (int k : yaw_order) {
      Choice ch;
      ch.candidate = static_cast<int>(i);
      ch.yaw_index = k;
      ch.placed = candidates[i];
      ch.placed.yaw_rad = candidates[i].yaw_rad + offsets[k];
      ch.camera = candidate_camera(ch.placed, 1, options);
      ch.eval_map = visibility_map(ch.camera, prisms, eval_grid);
      if (!shared_grid) ch.overlap_map = visibility_map(ch.camera, prisms, overlap_grid);
      choices.push_back(std::move(ch));
    }
  }

  // Feasibility: some choice must see part of the inner region.
  bool feasible = false;
  for (const auto& ch : choices) {
    bool sees = false;
    if (s.layout.roi_inner.size() >= 3) {
      for (int r = 0; r < eval_grid.rows && !sees; ++r) {
        for (int c = 0; c < eval_grid.cols && !sees; ++c) {
          if (ch.eval_map[static_cast<std::size_t>(r) * eval_grid.cols + c] &&
              point_in_polygon(eval_grid.cell_center(c, r), s.layout.roi_inner)) {
            sees = true;
          }
        }
      }
    } else {
      sees = std::any_of(ch.eval_map.begin(), ch.eval_map.end(), [](auto v) { return v != 0; });
    }
    if (sees) {
      feasible = true;
      break;
    }
  }
  if (!feasible) throw Infeasible("no candidate sees the region of interest at any yaw");

  Evaluator ev(s, std::move(choices), eval_grid, overlap_grid, weights, options.constraints);
  const auto& all = ev.choices();
  const int m = static_cast<int>(all.size());

  // Greedy seeding.
  std::vector<int> greedy;
  for (int step = 0; step < n_cameras; ++step) {
    int best_choice = -1;
    double best_value = -1.0;
    for (int c = 0; c < m; ++c) {
      if (uses_candidate(all, greedy, all[c].candidate, greedy.size())) continue;
      greedy.push_back(c);
      const double v = ev.objective(greedy);
      greedy.pop_back();
      if (v > best_value + kImprovementEps) {
        best_value = v;
        best_choice = c;
      }
    }
    greedy.push_back(best_choice);
  }
  const double greedy_objective = ev.objective(greedy);

  std::vector<int> best_sel = greedy;
  double best = local_search(ev, best_sel);

  std::mt19937_64 rng(options.seed);
  const int ncand = static_cast<int>(candidates.size());
  const int nyaw = static_cast<int>(offsets.size());
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<int> cand(ncand);
    std::iota(cand.begin(), cand.end(), 0);
    std::shuffle(cand.begin(), cand.end(), rng);
    std::vector<int> sel;
    for (int k = 0; k < n_cameras; ++k) {
      const int yaw = static_cast<int>(rng() % static_cast<std::uint64_t>(nyaw));
      sel.push_back(cand[k] * nyaw + yaw);
    }
    const double v = local_search(ev, sel);
    if (v > best + kImprovementEps) {
      best = v;
      best_sel = sel;
    }
  }

  PlacementResult result;
  std::sort(best_sel.begin(), best_sel.end(),
            [&](int a, int b) { return all[a].candidate < all[b].candidate; });
  for (int c : best_sel) {
    result.candidate_indices.push_back(all[c].candidate);
    result.selected.push_back(all[c].placed);
  }
  result.metrics = ev.metrics(best_sel);
  result.objective = objective_value(result.metrics, weights);
  result.greedy_objective = greedy_objective;
  return result;
}

scene::Scenario apply_placement(const scene::Scenario& s, const PlacementResult& result,
                                const PlacementOptions& options) {
  scene::Scenario out = s;
  out.cameras.clear();
  for (std::size_t i = 0; i < result.selected.size(); ++i) {
    out.cameras.push_back(candidate_camera(result.selected[i], static_cast<int>(i) + 1, options));
  }
  return out;
}

}  // namespace junction::coverage
