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

#include "junction/io/candidates_io.hpp"

#include "junction/common/canonical_json.hpp"
#include "junction/common/error.hpp"
#include "junction/io/files.hpp"

namespace junction::io {

namespace {

double number(const Json& j, const std::string& path, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaViolation(path + "/" + key, "missing required field");
  if (!it->is_number()) throw SchemaViolation(path + "/" + key, "expected a number");
  return it->get<double>();
}

int integer(const Json& j, const std::string& path, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaViolation(path + "/" + key, "missing required field");
  if (!it->is_number_integer()) throw SchemaViolation(path + "/" + key, "expected an integer");
  return it->get<int>();
}

}  // namespace

std::string write_candidates(const CandidateSet& set) {
  Json j;
  j["schema_version"] = kCandidatesFormatVersion;
  j["camera"] = {{"h_fov_deg", set.h_fov_deg},
                 {"width_px", set.width_px},
                 {"height_px", set.height_px},
                 {"max_range_m", set.max_range_m}};
  j["search"] = {{"yaw_step_deg", set.yaw_step_deg}, {"yaw_steps", set.yaw_steps}};
  j["candidates"] = Json::array();
  for (const auto& c : set.candidates) {
    j["candidates"].push_back({{"pole_id", c.pole_id},
                               {"position_m", Json::array({c.position_m.x(), c.position_m.y()})},
                               {"height_m", c.height_m},
                               {"yaw_deg", geometry::rad_to_deg(c.yaw_rad)},
                               {"pitch_deg", geometry::rad_to_deg(c.pitch_rad)}});
  }
  return canonical_dump(j);
}

CandidateSet read_candidates(std::string_view text) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw SchemaViolation("", "document must be an object");
  const int version = integer(j, "", "schema_version");
  if (version != kCandidatesFormatVersion) {
    throw UnsupportedVersion("candidates schema_version " + std::to_string(version) + " is not supported");
  }
  CandidateSet set;
  if (const auto cam = j.find("camera"); cam != j.end()) {
    set.h_fov_deg = number(*cam, "camera", "h_fov_deg");
    set.width_px = integer(*cam, "camera", "width_px");
    set.height_px = integer(*cam, "camera", "height_px");
    set.max_range_m = number(*cam, "camera", "max_range_m");
  }
  if (const auto search = j.find("search"); search != j.end()) {
    set.yaw_step_deg = number(*search, "search", "yaw_step_deg");
    set.yaw_steps = integer(*search, "search", "yaw_steps");
    if (set.yaw_steps < 1) throw SchemaViolation("search/yaw_steps", "must be at least 1");
  }
  const auto list = j.find("candidates");
  if (list == j.end() || !list->is_array()) throw SchemaViolation("candidates", "expected an array");
  for (std::size_t i = 0; i < list->size(); ++i) {
    const Json& c = (*list)[i];
    const std::string p = "candidates/" + std::to_string(i);
    coverage::PlacementCandidate pc;
    pc.pole_id = integer(c, p, "pole_id");
    const auto pos = c.find("position_m");
    if (pos == c.end() || !pos->is_array() || pos->size() != 2 || !(*pos)[0].is_number() ||
        !(*pos)[1].is_number()) {
      throw SchemaViolation(p + "/position_m", "expected [x, y]");
    }
    pc.position_m = Vec2((*pos)[0].get<double>(), (*pos)[1].get<double>());
    pc.height_m = number(c, p, "height_m");
    pc.yaw_rad = geometry::deg_to_rad(number(c, p, "yaw_deg"));
    pc.pitch_rad = geometry::deg_to_rad(number(c, p, "pitch_deg"));
    set.candidates.push_back(pc);
  }
  return set;
}

CandidateSet load_candidates(const std::filesystem::path& path) { return read_candidates(read_text(path)); }

coverage::PlacementOptions placement_options(const CandidateSet& set) {
  coverage::PlacementOptions o;
  o.intrinsics = geometry::intrinsics_from_lens(set.h_fov_deg, set.width_px, set.height_px);
  o.max_range_m = set.max_range_m;
  o.yaw_step_deg = set.yaw_step_deg;
  o.yaw_steps = set.yaw_steps;
  return o;
}

}  // namespace junction::io
