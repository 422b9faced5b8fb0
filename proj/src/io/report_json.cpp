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

#include "junction/io/report_json.hpp"

namespace junction::io {

Json metrics_json(const coverage::CoverageMetrics& m) {
  Json j;
  j["stereo_fraction_inner"] = m.stereo_fraction_inner;
  j["bicycle_lane_stereo_fraction"] = m.bicycle_lane_stereo_fraction;
  j["crosswalks"] = Json::array();
  for (const auto& c : m.crosswalks) {
    j["crosswalks"].push_back({{"index", c.index}, {"stereo_fraction", c.stereo_fraction}, {"cells", c.cells}});
  }
  j["approaches"] = Json::array();
  for (const auto& a : m.approaches) {
    j["approaches"].push_back({{"direction", a.direction}, {"covered_m", a.covered_m}, {"length_m", a.length_m}});
  }
  return j;
}

Json pairs_json(const std::vector<coverage::StereoPairSpec>& pairs) {
  Json j = Json::array();
  for (const auto& p : pairs) {
    j.push_back({{"cam_a", p.cam_a},
                 {"cam_b", p.cam_b},
                 {"axis_angle_deg", p.axis_angle_deg},
                 {"overlap_m2", p.overlap_m2}});
  }
  return j;
}

Json grid_spec_json(const coverage::GridSpec& spec) {
  return {{"origin_m", Json::array({spec.origin_m.x(), spec.origin_m.y()})},
          {"cell_m", spec.cell_m},
          {"cols", spec.cols},
          {"rows", spec.rows}};
}

Json placement_json(const coverage::PlacementResult& r) {
  Json j;
  j["candidate_indices"] = r.candidate_indices;
  j["objective"] = r.objective;
  j["greedy_objective"] = r.greedy_objective;
  j["metrics"] = metrics_json(r.metrics);
  j["selected"] = Json::array();
  for (const auto& c : r.selected) {
    j["selected"].push_back({{"pole_id", c.pole_id},
                             {"position_m", Json::array({c.position_m.x(), c.position_m.y()})},
                             {"height_m", c.height_m},
                             {"yaw_deg", geometry::rad_to_deg(c.yaw_rad)},
                             {"pitch_deg", geometry::rad_to_deg(c.pitch_rad)}});
  }
  return j;
}

Json accuracy_json(const perception::AccuracyReport& a) {
  return {{"rows_evaluated", a.rows_evaluated},   {"max_error_m", a.max_error_m},
          {"rmse_m", a.rmse_m},                   {"predicted_rmse_m", a.predicted_rmse_m},
          {"confirmed_tracks", a.confirmed_tracks}, {"actors_tracked", a.actors_tracked}};
}

}  // namespace junction::io
