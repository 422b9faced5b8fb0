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
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "junction/common/canonical_json.hpp"
#include "junction/io/candidates_io.hpp"
#include "junction/io/files.hpp"
#include "junction/io/recording_io.hpp"
#include "junction/io/scenario_io.hpp"
#include "junction/io/trajectory_io.hpp"
#include "junction/scene/reference.hpp"

using namespace junction;
namespace fs = std::filesystem;

namespace {

const fs::path kData = JUNCTION_DATA_DIR;
const std::string kReference = (kData / "reference_scenario.json").string();
const std::string kCrossing = (kData / "crossing_scenario.json").string();

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(JUNCTION_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json run_json(const std::string& args, int expected_exit = 0) {
  const auto r = run(args + " --json");
  EXPECT_EQ(r.exit_code, expected_exit) << args << "\n" << r.out;
  return r.exit_code == expected_exit ? Json::parse(r.out) : Json::object();
}

// "key: value" lines of the text report.
std::map<std::string, std::string> text_fields(const std::string& out) {
  std::map<std::string, std::string> m;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(": ");
    if (colon != std::string::npos) m[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return m;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("junction_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_candidates(const fs::path& dir, Vec2 offset) {
  io::CandidateSet set;
  set.yaw_steps = 1;
  const auto ref = scene::reference_scenario();
  for (int i = 0; i < 3; ++i) {
    const auto& c = ref.cameras[i];
    set.candidates.push_back({11 + i, c.pose.position_m.head<2>() + offset, c.pose.position_m.z(), c.pose.yaw_rad,
                              c.pose.pitch_rad});
  }
  const fs::path p = dir / "candidates.json";
  io::write_text(p, io::write_candidates(set));
  return p.string();
}

}  // namespace

TEST(Cli, CoverageReference) {
  const Json fine = run_json("coverage --scenario " + kReference);
  EXPECT_EQ(fine["pair_count"], 7);
  for (const auto& cw : fine["metrics"]["crosswalks"]) EXPECT_EQ(cw["stereo_fraction"], 1.0);
  EXPECT_EQ(fine["cell_m"], 0.25);
  const auto dir = scratch("coverage");
  const Json coarse = run_json("coverage --cell 1.0 --scenario " + kReference + " --out " + dir.string());
  EXPECT_EQ(coarse["pair_count"], fine["pair_count"]);
  EXPECT_EQ(coarse["pairs"], fine["pairs"]);
  EXPECT_EQ(io::read_bytes(dir / "coverage.cgrd"), io::read_bytes(kData / "golden" / "coverage.cgrd"));
  fs::remove_all(dir);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("coverage --scenario /no/such/file.json").exit_code, 2);
  EXPECT_EQ(run("coverage --scenario " + kReference + " --no-such-flag").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  const auto dir = scratch("invalid");
  io::write_text(dir / "bad.json", "{\"schema_version\": 1,\n \"scenario\": [\n");
  EXPECT_EQ(run("coverage --scenario " + (dir / "bad.json").string()).exit_code, 2);
  Json j = Json::parse(io::read_text(kReference));
  j["scenario"]["cameras"][0]["position_m"][2] = 9.5;
  io::write_text(dir / "tall.json", j.dump());
  EXPECT_EQ(run("coverage --scenario " + (dir / "tall.json").string()).exit_code, 2);
  fs::remove_all(dir);
}

TEST(Cli, PlanIdentityAndInfeasible) {
  const auto dir = scratch("plan");
  const std::string near = write_candidates(dir, Vec2::Zero());
  const Json all = run_json("plan --scenario " + kReference + " --candidates " + near + " --n 3");
  EXPECT_EQ(all["result"]["candidate_indices"], Json::parse("[0, 1, 2]"));
  EXPECT_EQ(run("plan --scenario " + kReference + " --candidates " + near + " --n 4").exit_code, 2);
  fs::rename(near, dir / "near.json");
  const std::string far = write_candidates(dir, Vec2(2000, 2000));
  EXPECT_EQ(run("plan --scenario " + kReference + " --candidates " + far + " --n 2").exit_code, 3);
  fs::remove_all(dir);
}

TEST(Cli, RecordReferenceMinute) {
  const auto dir = scratch("record");
  const Json r = run_json("record --scenario " + kReference + " --budget 576TB --ratio 8 --out " + dir.string());
  for (const auto& [id, frames] : r["frames_written_per_camera"].items()) EXPECT_EQ(frames, 1501) << id;
  EXPECT_NEAR(r["aggregate_raw_gbps"].get<double>(), 10.62, 0.005);
  EXPECT_NEAR(r["storage"]["duration_days"].get<double>(), 40.2, 0.4);
  EXPECT_EQ(r["stats"]["dropped"], 0);
  const auto back = io::read_recording(dir);
  EXPECT_EQ(back.recording.stamps.size(), 6u * 1501u);
  EXPECT_EQ(back.manifest.scenario_hash, r["scenario_hash"]);
  fs::remove_all(dir);
}

TEST(Cli, RecordDropsAreDataButBadConfigIsNot) {
  const Json slow = run_json("record --scenario " + kReference + " --duration 10 --throughput 25");
  EXPECT_GT(slow["stats"]["dropped"].get<int>(), 0);
  EXPECT_EQ(run("record --scenario " + kReference + " --duration 2 --workers 1").exit_code, 2);
  EXPECT_EQ(run("record --scenario " + kReference + " --duration 2 --budget lots").exit_code, 2);
}

TEST(Cli, PerceiveCrossing) {
  const auto dir = scratch("perceive");
  const Json r = run_json("perceive --scenario " + kCrossing + " --out " + dir.string());
  EXPECT_LT(r["accuracy"]["max_error_m"].get<double>(), 1e-3);
  EXPECT_EQ(r["tracks"], 4);
  const auto rows = io::load_trajectories(dir / "trajectories.jsonl");
  EXPECT_EQ(rows.size(), r["trajectory_rows"].get<std::size_t>());
  fs::remove_all(dir);
}

TEST(Cli, PerceiveEmptyScenario) {
  const auto dir = scratch("perceive_empty");
  const Json r = run_json("perceive --scenario " + kReference + " --duration 2 --out " + dir.string());
  EXPECT_EQ(r["tracks"], 0);
  EXPECT_TRUE(io::load_trajectories(dir / "trajectories.jsonl").empty());
  fs::remove_all(dir);
}

TEST(Cli, PerceiveCorruptRecordingExitsFour) {
  const auto dir = scratch("perceive_corrupt");
  const auto rec = dir / "rec";
  ASSERT_EQ(run("record --scenario " + kCrossing + " --duration 2 --out " + rec.string()).exit_code, 0);
  const Json ok = run_json("perceive --scenario " + kCrossing + " --duration 2 --recording " + rec.string());
  EXPECT_EQ(ok["source"]["recording_frames"], 6 * 51);
  auto bytes = io::read_bytes(rec / "cam1.chunks");
  bytes.resize(bytes.size() - 3);
  io::write_bytes(rec / "cam1.chunks", bytes);
  EXPECT_EQ(run("perceive --scenario " + kCrossing + " --duration 2 --recording " + rec.string()).exit_code, 4);
  fs::remove_all(dir);
}

TEST(Cli, OutputsAreByteReproducible) {
  const auto a = scratch("repro_a");
  const auto b = scratch("repro_b");
  for (const auto& d : {a, b}) {
    ASSERT_EQ(run("coverage --cell 1.0 --scenario " + kReference + " --out " + d.string()).exit_code, 0);
    ASSERT_EQ(run("perceive --sigma 0.5 --seed 3 --scenario " + kCrossing + " --out " + d.string()).exit_code, 0);
    ASSERT_EQ(run("record --duration 3 --jitter-ns 1000000 --seed 3 --scenario " + kCrossing + " --out " +
                  (d / "rec").string())
                  .exit_code,
              0);
  }
  for (const char* f : {"coverage.cgrd", "trajectories.jsonl", "rec/sync.csv", "rec/cam2.chunks", "rec/manifest.json"}) {
    EXPECT_EQ(io::read_bytes(a / f), io::read_bytes(b / f)) << f;
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, TextAndJsonReportTheSameNumbers) {
  const std::string args = "record --scenario " + kReference + " --duration 2 --budget 576TB";
  const Json j = run_json(args);
  const auto text = run(args);
  ASSERT_EQ(text.exit_code, 0);
  const auto t = text_fields(text.out);
  EXPECT_DOUBLE_EQ(std::stod(t.at("aggregate_raw_gbps")), j["aggregate_raw_gbps"].get<double>());
  EXPECT_DOUBLE_EQ(std::stod(t.at("storage.duration_days")), j["storage"]["duration_days"].get<double>());
  EXPECT_EQ(std::stoi(t.at("frames_written_per_camera.3")), j["frames_written_per_camera"]["3"].get<int>());
  EXPECT_EQ(t.at("scenario_hash"), j["scenario_hash"]);
}
