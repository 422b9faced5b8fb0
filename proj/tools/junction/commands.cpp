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

#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>

#include "junction/common/error.hpp"
#include "junction/coverage/coverage.hpp"
#include "junction/io/candidates_io.hpp"
#include "junction/io/files.hpp"
#include "junction/io/grid_io.hpp"
#include "junction/io/recording_io.hpp"
#include "junction/io/report_json.hpp"
#include "junction/io/scenario_io.hpp"
#include "junction/io/trajectory_io.hpp"
#include "junction/perception/chain.hpp"
#include "junction/pipeline/bitrate.hpp"
#include "junction/pipeline/simulation.hpp"
#include "junction/planner/server.hpp"

namespace junction::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

scene::Scenario load(const CommonOptions& c) {
  if (c.scenario.empty()) throw InvalidArgument("--scenario is required");
  if (!fs::exists(c.scenario)) throw IoError("scenario file not found: " + c.scenario);
  return io::load_scenario(c.scenario);
}

fs::path out_dir(const CommonOptions& c) {
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void emit(const CommonOptions& c, const Json& report) {
  if (c.json) {
    std::cout << canonical_dump(report);
  } else {
    std::cout << text_report(report);
  }
  if (!c.out.empty() && report.value("command", "") != "reference") {
    io::write_text(out_dir(c) / "report.json", canonical_dump(report));
  }
}

void log_time(const CommonOptions& c, const char* what, Clock::time_point start) {
  if (!c.verbose) return;
  std::fprintf(stderr, "%s: %.3f s\n", what, std::chrono::duration<double>(Clock::now() - start).count());
}

Json base_report(const char* command, const scene::Scenario& s, const CommonOptions& c) {
  Json r;
  r["command"] = command;
  r["scenario_hash"] = io::scenario_hash(s);
  r["seed"] = c.seed;
  return r;
}

void flatten(const Json& v, const std::string& prefix, std::string& out) {
  if (v.is_object()) {
    if (v.empty()) out += prefix + ": {}\n";
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (v.is_array()) {
    if (v.empty()) out += prefix + ": []\n";
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + ": " + (v.is_string() ? v.get<std::string>() : canonical_dump_line(v)) + "\n";
  }
}

}  // namespace

std::string text_report(const Json& report) {
  std::string out;
  flatten(report, "", out);
  return out;
}

double parse_capacity_tb(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("invalid capacity '" + text + "'");
  }
  std::string unit = text.substr(used);
  for (auto& ch : unit) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  double scale = 0.0;
  if (unit.empty() || unit == "TB") scale = 1.0;
  else if (unit == "PB") scale = 1e3;
  else if (unit == "GB") scale = 1e-3;
  else throw InvalidArgument("unknown capacity unit '" + unit + "' (use GB, TB or PB)");
  if (!(value > 0.0)) throw InvalidArgument("capacity must be positive");
  return value * scale;
}

Json cmd_coverage(const CommonOptions& c, const CoverageArgs& a) {
  const auto s = load(c);
  const auto t0 = Clock::now();
  coverage::CoverageOptions opt;
  opt.threads = c.threads;
  opt.pairs = coverage::enumerate_stereo_pairs(s, opt.constraints);
  const auto spec = coverage::default_grid_spec(s, a.cell_m);
  const auto grid = coverage::compute_coverage(s, spec, opt);
  const auto metrics = coverage::coverage_report(grid, s.layout);
  log_time(c, "coverage", t0);

  Json r = base_report("coverage", s, c);
  r["cell_m"] = a.cell_m;
  r["cameras"] = s.cameras.size();
  r["grid"] = io::grid_spec_json(spec);
  r["pair_count"] = opt.pairs->size();
  r["pairs"] = io::pairs_json(*opt.pairs);
  r["metrics"] = io::metrics_json(metrics);
  if (!c.out.empty()) {
    const auto dir = out_dir(c);
    io::save_grid(grid, dir / "coverage.cgrd");
    if (a.csv) io::write_text(dir / "coverage.csv", io::grid_to_csv(grid));
  }
  emit(c, r);
  return r;
}

Json cmd_plan(const CommonOptions& c, const PlanArgs& a) {
  const auto s = load(c);
  if (a.candidates.empty()) throw InvalidArgument("--candidates is required");
  const auto set = io::load_candidates(a.candidates);
  auto opt = io::placement_options(set);
  opt.seed = c.seed;
  opt.restarts = a.restarts;
  opt.installation_limits = s.installation_limits;
  const coverage::ObjectiveWeights w{a.w_stereo, a.w_crosswalk, a.w_approach, a.w_bicycle};
  const auto t0 = Clock::now();
  const auto result = coverage::optimize_placement(s, set.candidates, a.n, w, opt);
  log_time(c, "plan", t0);

  Json r = base_report("plan", s, c);
  r["n_cameras"] = a.n;
  r["candidates"] = set.candidates.size();
  r["weights"] = {{"stereo_inner", w.stereo_inner},
                  {"crosswalk", w.crosswalk},
                  {"approach", w.approach},
                  {"bicycle_lane", w.bicycle_lane}};
  r["result"] = io::placement_json(result);
  if (!c.out.empty()) {
    const auto placed = coverage::apply_placement(s, result, opt);
    io::save_scenario(placed, out_dir(c) / "placed_scenario.json");
  }
  emit(c, r);
  return r;
}

Json cmd_record(const CommonOptions& c, const RecordArgs& a) {
  const auto s = load(c);
  pipeline::PipelineConfig cfg;
  cfg.workers = a.workers;
  cfg.worker_throughput_fps = a.throughput_fps;
  cfg.channel_capacity = a.channel_capacity;
  cfg.chunk_frames = a.chunk_frames;
  cfg.jitter_sd_ns = a.jitter_ns;
  cfg.duration_s = a.duration_s;
  cfg.threads = c.threads;
  cfg.seed = c.seed;
  const auto t0 = Clock::now();
  const auto result = pipeline::run_pipeline(s, cfg);
  log_time(c, "record", t0);

  Json cfg_json = io::pipeline_config_json(cfg);
  cfg_json.erase("threads");
  Json r = base_report("record", s, c);
  r["config"] = cfg_json;
  r["stats"] = io::throughput_stats_json(result.stats);
  Json frames = Json::object();
  for (const auto& cam : result.stats.cameras) frames[std::to_string(cam.camera_id)] = cam.written;
  r["frames_written_per_camera"] = frames;
  r["aggregate_raw_gbps"] = result.stats.aggregate_raw_bitrate_bps / 1e9;
  if (!s.cameras.empty()) {
    r["per_camera_raw_gbps"] =
        pipeline::per_camera_bitrate(s.cameras.front().intrinsics, cfg.bits_per_pixel, s.frame_rate_hz) / 1e9;
  }
  if (a.budget) {
    const double tb = parse_capacity_tb(*a.budget);
    const double secs = pipeline::storage_duration(tb, result.stats.aggregate_raw_bitrate_bps, a.ratio);
    r["storage"] = {{"capacity_tb", tb},
                    {"ratio", a.ratio},
                    {"duration_s", secs},
                    {"duration_days", secs / pipeline::kSecondsPerDay}};
  }
  if (!c.out.empty()) {
    io::RecordingManifest man;
    man.scenario_hash = r["scenario_hash"];
    man.seed = c.seed;
    man.payload = a.full_payload ? io::PayloadMode::kFull : io::PayloadMode::kElided;
    man.config = cfg_json;
    man.stats = r["stats"];
    io::write_recording(out_dir(c), result.recording, man);
  }
  emit(c, r);
  return r;
}

Json cmd_perceive(const CommonOptions& c, const PerceiveArgs& a) {
  const auto s = load(c);
  perception::PerceptionConfig cfg;
  cfg.noise.sigma_px = a.sigma_px;
  cfg.noise.miss_base = a.miss;
  cfg.noise.fp_rate_per_frame = a.fp_rate;
  cfg.noise.keypoints = a.keypoints;
  cfg.noise.seed = c.seed;
  cfg.duration_s = a.duration_s;

  std::set<std::pair<int, std::int64_t>> frames;
  Json source = "scenario";
  if (!a.recording.empty()) {
    const auto bundle = io::read_recording(a.recording);
    if (bundle.manifest.scenario_hash != io::scenario_hash(s)) {
      throw InvalidArgument("recording was made from a different scenario");
    }
    const auto& clock = bundle.recording.clock;
    if (clock.period_ns != sync::clock_for_rate(s.frame_rate_hz).period_ns) {
      throw InvalidArgument("recording frame period does not match the scenario frame rate");
    }
    std::int64_t max_seq = 0;
    for (const auto& st : bundle.recording.stamps) {
      frames.insert({st.camera_id, st.trigger_utc_ns});
      max_seq = std::max(max_seq, st.seq);
    }
    cfg.start_utc_ns = clock.start_utc_ns;
    if (!cfg.duration_s) cfg.duration_s = static_cast<double>(max_seq * clock.period_ns) * 1e-9;
    cfg.frame_available = [&frames](int id, std::int64_t t) { return frames.count({id, t}) > 0; };
    source = {{"recording_frames", bundle.recording.stamps.size()}};
  }

  const auto t0 = Clock::now();
  const auto result = perception::run_perception(s, cfg);
  log_time(c, "perceive", t0);
  const auto records = io::trajectory_records(result.tracks);

  Json r = base_report("perceive", s, c);
  r["source"] = source;
  r["noise"] = {{"sigma_px", a.sigma_px}, {"miss_base", a.miss}, {"fp_rate_per_frame", a.fp_rate}, {"keypoints", a.keypoints}};
  r["pairs"] = result.pairs.size();
  r["frames"] = result.frames;
  r["detections"] = result.detections;
  r["observations"] = result.observations;
  r["fused"] = result.fused;
  r["tracks"] = result.tracks.size();
  r["trajectory_rows"] = records.size();
  if (!s.actors.empty()) r["accuracy"] = io::accuracy_json(result.accuracy);
  if (!c.out.empty()) io::save_trajectories(records, out_dir(c) / "trajectories.jsonl");
  emit(c, r);
  return r;
}

int cmd_serve(const CommonOptions& c, const ServeArgs& a) {
  if (c.scenario.empty()) throw InvalidArgument("--scenario is required");
  if (!fs::exists(c.scenario)) throw IoError("scenario file not found: " + c.scenario);
  planner::SessionOptions so;
  so.cell_m = a.cell_m;
  so.threads = c.threads;
  planner::Session session(io::load_document(c.scenario), so);
  planner::ServerOptions opt;
  opt.port = a.port;
  if (!a.static_root.empty()) opt.static_root = a.static_root;
  planner::Server server(session, opt);
  server.start();
  std::cout << "listening on http://127.0.0.1:" << server.port() << std::endl;
  server.wait();
  return kExitOk;
}

Json cmd_reference(const CommonOptions& c) {
  const auto doc = io::reference_document();
  Json r;
  r["command"] = "reference";
  r["scenario_hash"] = io::scenario_hash(doc.scenario);
  if (!c.out.empty()) {
    const fs::path p(c.out);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    io::save_document(doc, p);
  } else {
    std::cout << io::serialize_document(doc);
    return r;
  }
  emit(c, r);
  return r;
}

}  // namespace junction::cli
