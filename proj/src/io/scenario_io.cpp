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

#include "junction/io/scenario_io.hpp"

#include <set>

#include "junction/common/digest.hpp"
#include "junction/common/error.hpp"
#include "junction/io/files.hpp"
#include "junction/scene/reference.hpp"

namespace junction::io {

namespace {

using geometry::deg_to_rad;
using geometry::rad_to_deg;

Json point2(const Vec2& p) { return Json::array({p.x(), p.y()}); }
Json point3(const Vec3& p) { return Json::array({p.x(), p.y(), p.z()}); }

Json points(const std::vector<Vec2>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(point2(p));
  return a;
}

// Reads typed fields and tracks which keys of each object were consumed.
class Reader {
 public:
  Reader(LoadMode mode, Json& unknown) : mode_(mode), unknown_(unknown) {}

  const Json& object(const Json& parent, const std::string& path, const char* key) {
    const Json& v = required(parent, path, key);
    if (!v.is_object()) throw SchemaViolation(path + "/" + key, "expected an object");
    return v;
  }

  const Json& array(const Json& parent, const std::string& path, const char* key) {
    const Json& v = required(parent, path, key);
    if (!v.is_array()) throw SchemaViolation(path + "/" + key, "expected an array");
    return v;
  }

  double number(const Json& parent, const std::string& path, const char* key) {
    const Json& v = required(parent, path, key);
    if (!v.is_number()) throw SchemaViolation(path + "/" + key, "expected a number");
    return v.get<double>();
  }

  double number_or(const Json& parent, const std::string& path, const char* key, double fallback) {
    return parent.contains(key) ? number(parent, path, key) : fallback;
  }

  long long integer(const Json& parent, const std::string& path, const char* key) {
    const Json& v = required(parent, path, key);
    if (!v.is_number_integer()) throw SchemaViolation(path + "/" + key, "expected an integer");
    return v.get<long long>();
  }

  std::string string(const Json& parent, const std::string& path, const char* key) {
    const Json& v = required(parent, path, key);
    if (!v.is_string()) throw SchemaViolation(path + "/" + key, "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const Json& parent, const std::string& path, const char* key) {
    const Json& v = required(parent, path, key);
    if (!v.is_boolean()) throw SchemaViolation(path + "/" + key, "expected a boolean");
    return v.get<bool>();
  }

  Vec2 vec2(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw SchemaViolation(path, "expected [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }

  Vec3 vec3(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
      throw SchemaViolation(path, "expected [x, y, z]");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
  }

  std::vector<Vec2> polyline(const Json& parent, const std::string& path, const char* key) {
    const Json& a = array(parent, path, key);
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.push_back(vec2(a[i], path + "/" + key + "/" + std::to_string(i)));
    }
    return out;
  }

  void finish(const Json& obj, const std::string& path, std::initializer_list<const char*> known) {
    const std::set<std::string> names(known.begin(), known.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (names.count(it.key())) continue;
      if (mode_ == LoadMode::kStrict) {
        throw SchemaViolation(path.empty() ? it.key() : path + "/" + it.key(), "unknown field");
      }
      unknown_[path][it.key()] = it.value();
    }
  }

 private:
  const Json& required(const Json& parent, const std::string& path, const char* key) {
    const auto it = parent.find(key);
    if (it == parent.end()) throw SchemaViolation(path + "/" + key, "missing required field");
    return *it;
  }

  LoadMode mode_;
  Json& unknown_;
};

std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

scene::Scenario read_scenario(Reader& r, const Json& j) {
  const std::string root = "scenario";
  scene::Scenario s;
  s.seed = static_cast<std::uint64_t>(r.integer(j, root, "seed"));
  s.duration_s = r.number(j, root, "duration_s");
  s.frame_rate_hz = r.number(j, root, "frame_rate_hz");
  s.installation_limits = r.boolean(j, root, "installation_limits");

  const std::string lp = root + "/layout";
  const Json& lj = r.object(j, root, "layout");
  const Json& lanes = r.array(lj, lp, "lanes");
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    const std::string p = at(lp + "/lanes", i);
    scene::Lane lane;
    lane.id = r.string(lanes[i], p, "id");
    const auto kind = scene::lane_kind_from_string(r.string(lanes[i], p, "kind"));
    if (!kind) throw SchemaViolation(p + "/kind", "unknown lane kind");
    lane.kind = *kind;
    lane.centerline = r.polyline(lanes[i], p, "centerline");
    lane.width_m = r.number(lanes[i], p, "width_m");
    r.finish(lanes[i], p, {"id", "kind", "centerline", "width_m"});
    s.layout.lanes.push_back(std::move(lane));
  }
  const Json& cws = r.array(lj, lp, "crosswalks");
  for (std::size_t i = 0; i < cws.size(); ++i) {
    const std::string p = at(lp + "/crosswalks", i);
    scene::Crosswalk cw;
    cw.index = static_cast<int>(r.integer(cws[i], p, "index"));
    cw.polygon = r.polyline(cws[i], p, "polygon");
    r.finish(cws[i], p, {"index", "polygon"});
    s.layout.crosswalks.push_back(std::move(cw));
  }
  s.layout.roi_inner = r.polyline(lj, lp, "roi_inner");
  const Json& aps = r.array(lj, lp, "approaches");
  for (std::size_t i = 0; i < aps.size(); ++i) {
    const std::string p = at(lp + "/approaches", i);
    scene::Approach a;
    a.direction = r.string(aps[i], p, "direction");
    a.polyline = r.polyline(aps[i], p, "polyline");
    a.length_m = r.number(aps[i], p, "length_m");
    r.finish(aps[i], p, {"direction", "polyline", "length_m"});
    s.layout.approaches.push_back(std::move(a));
  }
  r.finish(lj, lp, {"lanes", "crosswalks", "roi_inner", "approaches"});

  const Json& occ = r.array(j, root, "occluders");
  for (std::size_t i = 0; i < occ.size(); ++i) {
    const std::string p = at(root + "/occluders", i);
    scene::Occluder o;
    o.footprint = r.polyline(occ[i], p, "footprint");
    o.height_m = r.number(occ[i], p, "height_m");
    const auto kind = scene::occluder_kind_from_string(r.string(occ[i], p, "kind"));
    if (!kind) throw SchemaViolation(p + "/kind", "unknown occluder kind");
    o.kind = *kind;
    r.finish(occ[i], p, {"footprint", "height_m", "kind"});
    s.occluders.push_back(std::move(o));
  }

  const Json& cams = r.array(j, root, "cameras");
  for (std::size_t i = 0; i < cams.size(); ++i) {
    const std::string p = at(root + "/cameras", i);
    geometry::CameraModel c;
    c.id = static_cast<int>(r.integer(cams[i], p, "id"));
    const Json& ij = r.object(cams[i], p, "intrinsics");
    const std::string ip = p + "/intrinsics";
    c.intrinsics.width_px = static_cast<int>(r.integer(ij, ip, "width_px"));
    c.intrinsics.height_px = static_cast<int>(r.integer(ij, ip, "height_px"));
    c.intrinsics.fx_px = r.number(ij, ip, "fx_px");
    c.intrinsics.fy_px = r.number(ij, ip, "fy_px");
    c.intrinsics.cx_px = r.number(ij, ip, "cx_px");
    c.intrinsics.cy_px = r.number(ij, ip, "cy_px");
    r.finish(ij, ip, {"width_px", "height_px", "fx_px", "fy_px", "cx_px", "cy_px"});
    const Json& pj = r.object(cams[i], p, "pose");
    const std::string pp = p + "/pose";
    c.pose.position_m = r.vec3(r.array(pj, pp, "position_m"), pp + "/position_m");
    c.pose.yaw_rad = deg_to_rad(r.number(pj, pp, "yaw_deg"));
    c.pose.pitch_rad = deg_to_rad(r.number(pj, pp, "pitch_deg"));
    c.pose.roll_rad = deg_to_rad(r.number_or(pj, pp, "roll_deg", 0.0));
    r.finish(pj, pp, {"position_m", "yaw_deg", "pitch_deg", "roll_deg"});
    c.max_range_m = r.number(cams[i], p, "max_range_m");
    r.finish(cams[i], p, {"id", "intrinsics", "pose", "max_range_m"});
    s.cameras.push_back(c);
  }

  const Json& actors = r.array(j, root, "actors");
  for (std::size_t i = 0; i < actors.size(); ++i) {
    const std::string p = at(root + "/actors", i);
    const Json& aj = actors[i];
    scene::Actor a;
    a.id = static_cast<int>(r.integer(aj, p, "id"));
    const auto cls = scene::actor_class_from_string(r.string(aj, p, "class"));
    if (!cls) throw SchemaViolation(p + "/class", "unknown actor class");
    a.actor_class = *cls;
    a.ref_height_m = r.number(aj, p, "ref_height_m");
    const Json& sj = r.object(aj, p, "shape");
    const std::string sp = p + "/shape";
    const std::string type = r.string(sj, sp, "type");
    if (type == "cylinder") {
      a.shape = scene::Cylinder{r.number(sj, sp, "radius_m"), r.number(sj, sp, "height_m")};
      r.finish(sj, sp, {"type", "radius_m", "height_m"});
    } else if (type == "box") {
      a.shape = scene::Box{r.number(sj, sp, "length_m"), r.number(sj, sp, "width_m"),
                           r.number(sj, sp, "height_m")};
      r.finish(sj, sp, {"type", "length_m", "width_m", "height_m"});
    } else {
      throw SchemaViolation(sp + "/type", "shape type must be cylinder or box");
    }
    const Json& tj = r.array(aj, p, "trajectory");
    for (std::size_t k = 0; k < tj.size(); ++k) {
      const std::string tp = at(p + "/trajectory", k);
      scene::TrajectorySample ts;
      ts.t_s = r.number(tj[k], tp, "t_s");
      ts.x_m = r.number(tj[k], tp, "x_m");
      ts.y_m = r.number(tj[k], tp, "y_m");
      ts.heading_rad = deg_to_rad(r.number(tj[k], tp, "heading_deg"));
      ts.speed_mps = r.number(tj[k], tp, "speed_mps");
      r.finish(tj[k], tp, {"t_s", "x_m", "y_m", "heading_deg", "speed_mps"});
      a.trajectory.push_back(ts);
    }
    r.finish(aj, p, {"id", "class", "ref_height_m", "shape", "trajectory"});
    s.actors.push_back(std::move(a));
  }

  const Json& wj = r.object(j, root, "weather");
  const std::string wp = root + "/weather";
  const Json& tl = r.array(wj, wp, "timeline");
  for (std::size_t i = 0; i < tl.size(); ++i) {
    const std::string p = at(wp + "/timeline", i);
    scene::WeatherSample w;
    w.t_s = r.number(tl[i], p, "t_s");
    w.visibility_m = r.number(tl[i], p, "visibility_m");
    w.precipitation_mmph = r.number(tl[i], p, "precipitation_mmph");
    w.temperature_C = r.number(tl[i], p, "temperature_C");
    r.finish(tl[i], p, {"t_s", "visibility_m", "precipitation_mmph", "temperature_C"});
    s.weather.timeline.push_back(w);
  }
  r.finish(wj, wp, {"timeline"});
  r.finish(j, root, {"seed", "duration_s", "frame_rate_hz", "installation_limits", "layout", "occluders",
                     "cameras", "actors", "weather"});
  return s;
}

}  // namespace

Json scenario_to_json(const scene::Scenario& s) {
  Json j;
  j["seed"] = s.seed;
  j["duration_s"] = s.duration_s;
  j["frame_rate_hz"] = s.frame_rate_hz;
  j["installation_limits"] = s.installation_limits;

  Json layout;
  layout["lanes"] = Json::array();
  for (const auto& l : s.layout.lanes) {
    layout["lanes"].push_back(
        {{"id", l.id}, {"kind", scene::to_string(l.kind)}, {"centerline", points(l.centerline)}, {"width_m", l.width_m}});
  }
  layout["crosswalks"] = Json::array();
  for (const auto& c : s.layout.crosswalks) {
    layout["crosswalks"].push_back({{"index", c.index}, {"polygon", points(c.polygon)}});
  }
  layout["roi_inner"] = points(s.layout.roi_inner);
  layout["approaches"] = Json::array();
  for (const auto& a : s.layout.approaches) {
    layout["approaches"].push_back(
        {{"direction", a.direction}, {"polyline", points(a.polyline)}, {"length_m", a.length_m}});
  }
  j["layout"] = layout;

  j["occluders"] = Json::array();
  for (const auto& o : s.occluders) {
    j["occluders"].push_back(
        {{"footprint", points(o.footprint)}, {"height_m", o.height_m}, {"kind", scene::to_string(o.kind)}});
  }

  j["cameras"] = Json::array();
  for (const auto& c : s.cameras) {
    const auto& k = c.intrinsics;
    Json cj;
    cj["id"] = c.id;
    cj["intrinsics"] = {{"width_px", k.width_px}, {"height_px", k.height_px}, {"fx_px", k.fx_px},
                        {"fy_px", k.fy_px},       {"cx_px", k.cx_px},         {"cy_px", k.cy_px}};
    cj["pose"] = {{"position_m", point3(c.pose.position_m)},
                  {"yaw_deg", rad_to_deg(c.pose.yaw_rad)},
                  {"pitch_deg", rad_to_deg(c.pose.pitch_rad)},
                  {"roll_deg", rad_to_deg(c.pose.roll_rad)}};
    cj["max_range_m"] = c.max_range_m;
    j["cameras"].push_back(cj);
  }

  j["actors"] = Json::array();
  for (const auto& a : s.actors) {
    Json aj;
    aj["id"] = a.id;
    aj["class"] = scene::to_string(a.actor_class);
    aj["ref_height_m"] = a.ref_height_m;
    if (const auto* c = std::get_if<scene::Cylinder>(&a.shape)) {
      aj["shape"] = {{"type", "cylinder"}, {"radius_m", c->radius_m}, {"height_m", c->height_m}};
    } else {
      const auto& b = std::get<scene::Box>(a.shape);
      aj["shape"] = {{"type", "box"}, {"length_m", b.length_m}, {"width_m", b.width_m}, {"height_m", b.height_m}};
    }
    aj["trajectory"] = Json::array();
    for (const auto& t : a.trajectory) {
      aj["trajectory"].push_back({{"t_s", t.t_s},
                                  {"x_m", t.x_m},
                                  {"y_m", t.y_m},
                                  {"heading_deg", rad_to_deg(t.heading_rad)},
                                  {"speed_mps", t.speed_mps}});
    }
    j["actors"].push_back(aj);
  }

  Json tl = Json::array();
  for (const auto& w : s.weather.timeline) {
    tl.push_back({{"t_s", w.t_s},
                  {"visibility_m", w.visibility_m},
                  {"precipitation_mmph", w.precipitation_mmph},
                  {"temperature_C", w.temperature_C}});
  }
  j["weather"] = {{"timeline", tl}};
  return j;
}

std::string serialize_document(const ScenarioDocument& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["comments"] = Json::object();
  for (const auto& [k, v] : doc.comments) j["comments"][k] = v;
  j["scenario"] = scenario_to_json(doc.scenario);
  for (auto it = doc.unknown_fields.begin(); it != doc.unknown_fields.end(); ++it) {
    const Json::json_pointer ptr(it.key().empty() ? "" : "/" + it.key());
    if (!j.contains(ptr) || !j[ptr].is_object()) continue;
    Json& target = j[ptr];
    for (auto f = it.value().begin(); f != it.value().end(); ++f) {
      if (!target.contains(f.key())) target[f.key()] = f.value();
    }
  }
  return canonical_dump(j);
}

ScenarioDocument parse_document(std::string_view text, LoadMode mode) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw SchemaViolation("", "document must be an object");
  ScenarioDocument doc;
  Reader r(mode, doc.unknown_fields);
  doc.schema_version = static_cast<int>(r.integer(j, "", "schema_version"));
  if (doc.schema_version != kScenarioSchemaVersion) {
    throw UnsupportedVersion("scenario schema_version " + std::to_string(doc.schema_version) +
                             " is not supported (expected 1)");
  }
  if (j.contains("comments")) {
    const Json& c = r.object(j, "", "comments");
    for (auto it = c.begin(); it != c.end(); ++it) {
      if (!it.value().is_string()) throw SchemaViolation("comments/" + it.key(), "expected a string");
      doc.comments[it.key()] = it.value().get<std::string>();
    }
  }
  doc.scenario = read_scenario(r, r.object(j, "", "scenario"));
  r.finish(j, "", {"schema_version", "comments", "scenario"});
  doc.violations = scene::validate_scenario(doc.scenario);
  if (mode == LoadMode::kStrict && !doc.violations.empty()) {
    const auto& v = doc.violations.front();
    throw SchemaViolation(v.entity, v.rule);
  }
  return doc;
}

ScenarioDocument load_document(const std::filesystem::path& path, LoadMode mode) {
  return parse_document(read_text(path), mode);
}

void save_document(const ScenarioDocument& doc, const std::filesystem::path& path) {
  write_text(path, serialize_document(doc));
}

scene::Scenario load_scenario(const std::filesystem::path& path, LoadMode mode) {
  return load_document(path, mode).scenario;
}

void save_scenario(const scene::Scenario& s, const std::filesystem::path& path,
                   const std::map<std::string, std::string>& comments) {
  ScenarioDocument doc;
  doc.scenario = s;
  doc.comments = comments;
  save_document(doc, path);
}

std::string scenario_hash(const scene::Scenario& s) { return sha256_hex(canonical_dump(scenario_to_json(s))); }

ScenarioDocument reference_document() {
  ScenarioDocument doc;
  doc.scenario = scene::reference_scenario();
  doc.comments = scene::reference_comments();
  return doc;
}

}  // namespace junction::io
