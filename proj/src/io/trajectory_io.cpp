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

#include "junction/io/trajectory_io.hpp"

#include <algorithm>

#include "junction/common/canonical_json.hpp"
#include "junction/common/error.hpp"
#include "junction/io/files.hpp"

namespace junction::io {

namespace {

constexpr const char* kFormatName = "junction-trajectories";

Json record_json(const TrajectoryRecord& r) {
  Json j;
  j["track_id"] = r.track_id;
  j["class"] = scene::to_string(r.actor_class);
  j["trigger_utc_ns"] = r.trigger_utc_ns;
  j["x_m"] = r.x_m;
  j["y_m"] = r.y_m;
  j["vx"] = r.vx;
  j["vy"] = r.vy;
  j["n_views"] = r.n_views;
  if (!r.keypoints_m.empty()) {
    Json k = Json::object();
    for (const auto& [name, p] : r.keypoints_m) k[name] = Json::array({p.x(), p.y(), p.z()});
    j["keypoints_m"] = k;
  }
  return j;
}

const Json& field(const Json& j, const std::string& where, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaViolation(where + "/" + key, "missing required field");
  return *it;
}

double number(const Json& j, const std::string& where, const char* key) {
  const Json& v = field(j, where, key);
  if (!v.is_number()) throw SchemaViolation(where + "/" + key, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const Json& j, const std::string& where, const char* key) {
  const Json& v = field(j, where, key);
  if (!v.is_number_integer()) throw SchemaViolation(where + "/" + key, "expected an integer");
  return v.get<std::int64_t>();
}

}  // namespace

std::vector<TrajectoryRecord> trajectory_records(const std::vector<perception::Track>& tracks) {
  std::vector<const perception::Track*> order;
  for (const auto& t : tracks) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::vector<TrajectoryRecord> out;
  for (const auto* t : order) {
    for (const auto& row : t->history) {
      out.push_back({t->id, t->actor_class, row.trigger_utc_ns, row.x_m, row.y_m, row.vx, row.vy, row.n_views,
                     row.keypoints_m});
    }
  }
  return out;
}

std::string write_trajectories(const std::vector<TrajectoryRecord>& records) {
  std::string out = canonical_dump_line(Json{{"format", kFormatName}, {"version", kTrajectoryFormatVersion}});
  out += '\n';
  for (const auto& r : records) {
    out += canonical_dump_line(record_json(r));
    out += '\n';
  }
  return out;
}

std::vector<TrajectoryRecord> read_trajectories(std::string_view text) {
  std::vector<TrajectoryRecord> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = parse_json(line);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, e.column());
    }
    const std::string where = "line " + std::to_string(line_no);
    if (!j.is_object()) throw SchemaViolation(where, "expected an object");
    if (!header) {
      const auto fmt = j.find("format");
      if (fmt == j.end() || *fmt != kFormatName) throw SchemaViolation(where + "/format", "not a trajectory file");
      const auto version = integer(j, where, "version");
      if (version != kTrajectoryFormatVersion) {
        throw UnsupportedVersion("trajectory format version " + std::to_string(version) + " is not supported");
      }
      header = true;
      continue;
    }
    TrajectoryRecord r;
    r.track_id = static_cast<int>(integer(j, where, "track_id"));
    const Json& cls = field(j, where, "class");
    const auto c = cls.is_string() ? scene::actor_class_from_string(cls.get<std::string>()) : std::nullopt;
    if (!c) throw SchemaViolation(where + "/class", "unknown actor class");
    r.actor_class = *c;
    r.trigger_utc_ns = integer(j, where, "trigger_utc_ns");
    r.x_m = number(j, where, "x_m");
    r.y_m = number(j, where, "y_m");
    r.vx = number(j, where, "vx");
    r.vy = number(j, where, "vy");
    r.n_views = static_cast<int>(integer(j, where, "n_views"));
    if (const auto kp = j.find("keypoints_m"); kp != j.end()) {
      if (!kp->is_object()) throw SchemaViolation(where + "/keypoints_m", "expected an object");
      for (auto it = kp->begin(); it != kp->end(); ++it) {
        const Json& p = it.value();
        if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number()) {
          throw SchemaViolation(where + "/keypoints_m/" + it.key(), "expected [x, y, z]");
        }
        r.keypoints_m[it.key()] = Vec3(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
      }
    }
    out.push_back(std::move(r));
  }
  if (!header) throw ParseError("missing trajectory header", 1, 1);
  return out;
}

void save_trajectories(const std::vector<TrajectoryRecord>& records, const std::filesystem::path& path) {
  write_text(path, write_trajectories(records));
}

std::vector<TrajectoryRecord> load_trajectories(const std::filesystem::path& path) {
  return read_trajectories(read_text(path));
}

}  // namespace junction::io
