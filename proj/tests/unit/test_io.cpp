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

#include <filesystem>
#include <random>

#include "junction/common/error.hpp"
#include "junction/coverage/coverage.hpp"
#include "junction/io/candidates_io.hpp"
#include "junction/io/files.hpp"
#include "junction/io/grid_io.hpp"
#include "junction/io/recording_io.hpp"
#include "junction/io/scenario_io.hpp"
#include "junction/io/sync_io.hpp"
#include "junction/io/trajectory_io.hpp"
#include "junction/pipeline/simulation.hpp"
#include "junction/scene/reference.hpp"
#include "scenes.hpp"

using namespace junction;
namespace fs = std::filesystem;

namespace {

const fs::path kData = JUNCTION_DATA_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("junction_test_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

template <typename E, typename F>
E expect_throw(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e;
  }
  ADD_FAILURE() << "expected exception not thrown";
  throw std::logic_error("unreachable");
}

}  // namespace

TEST(ScenarioIo, CheckedInFilesRoundTripByteIdentical) {
  for (const char* name : {"reference_scenario.json", "crossing_scenario.json"}) {
    const std::string text = io::read_text(kData / name);
    EXPECT_EQ(io::serialize_document(io::parse_document(text)), text) << name;
  }
}

TEST(ScenarioIo, ReferenceFileEqualsGenerator) {
  EXPECT_EQ(io::read_text(kData / "reference_scenario.json"), io::serialize_document(io::reference_document()));
}

TEST(ScenarioIo, RandomScenesRoundTripStructurally) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    io::ScenarioDocument doc;
    doc.scenario = scenes::random_scene(seed, 25.0);
    doc.scenario.actors.push_back(scenes::line_actor(1, scene::ActorClass::kCyclist, -5, 0, 5, 0, 4.0));
    const std::string a = io::serialize_document(doc);
    const std::string b = io::serialize_document(io::parse_document(a));
    EXPECT_EQ(a, b) << seed;
  }
}

TEST(ScenarioIo, HashIgnoresFormatting) {
  const std::string text = io::read_text(kData / "reference_scenario.json");
  const std::string compact = Json::parse(text).dump();
  EXPECT_EQ(io::scenario_hash(io::parse_document(compact).scenario),
            io::scenario_hash(io::parse_document(text).scenario));
  auto s = io::parse_document(text).scenario;
  s.cameras[0].pose.position_m.z() += 0.5;
  EXPECT_NE(io::scenario_hash(s), io::scenario_hash(io::parse_document(text).scenario));
  EXPECT_EQ(io::scenario_hash(s).size(), 64u);
}

TEST(ScenarioIo, StrictRejectsUnknownFieldLenientKeepsIt) {
  Json j = Json::parse(io::read_text(kData / "reference_scenario.json"));
  j["scenario"]["cameras"][1]["mount_note"] = "north pole";
  const std::string text = j.dump(2);
  const auto e = expect_throw<SchemaViolation>([&] { io::parse_document(text); });
  EXPECT_NE(e.path().find("scenario/cameras/1"), std::string::npos) << e.path();
  const auto doc = io::parse_document(text, io::LoadMode::kLenient);
  const std::string out = io::serialize_document(doc);
  EXPECT_NE(out.find("\"mount_note\": \"north pole\""), std::string::npos);
  EXPECT_EQ(Json::parse(out), Json::parse(canonical_dump(j)));
}

TEST(ScenarioIo, InvariantViolationsNameTheEntity) {
  Json j = Json::parse(io::read_text(kData / "reference_scenario.json"));
  j["scenario"]["layout"]["crosswalks"].erase(2);
  const std::string text = j.dump();
  const auto e = expect_throw<SchemaViolation>([&] { io::parse_document(text); });
  EXPECT_NE(e.path().find("crosswalks"), std::string::npos) << e.path();
  const auto doc = io::parse_document(text, io::LoadMode::kLenient);
  ASSERT_FALSE(doc.violations.empty());
  EXPECT_NE(doc.violations[0].entity.find("crosswalks"), std::string::npos);

  Json h = Json::parse(io::read_text(kData / "reference_scenario.json"));
  h["scenario"]["cameras"][2]["position_m"][2] = 9.0;
  const auto e2 = expect_throw<SchemaViolation>([&] { io::parse_document(h.dump()); });
  EXPECT_NE(e2.path().find("scenario/cameras/2"), std::string::npos) << e2.path();
}

TEST(ScenarioIo, TypeErrorsNameThePath) {
  Json j = Json::parse(io::read_text(kData / "reference_scenario.json"));
  j["scenario"]["frame_rate_hz"] = "fast";
  const auto e = expect_throw<SchemaViolation>([&] { io::parse_document(j.dump()); });
  EXPECT_NE(e.path().find("frame_rate_hz"), std::string::npos) << e.path();
}

TEST(ScenarioIo, UnknownSchemaVersion) {
  Json j = Json::parse(io::read_text(kData / "reference_scenario.json"));
  j["schema_version"] = 2;
  EXPECT_THROW(io::parse_document(j.dump()), UnsupportedVersion);
}

TEST(ScenarioIo, ParseErrorPosition) {
  const std::string text = "{\n  \"schema_version\": 1,\n  \"scenario\": {,\n}\n";
  const auto e = expect_throw<ParseError>([&] { io::parse_document(text); });
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 16u);
}

TEST(ScenarioIo, MissingFileIsIoError) {
  EXPECT_THROW(io::load_scenario(kData / "no_such_file.json"), IoError);
}

TEST(GridIo, GoldenGridMatchesComputation) {
  const auto s = io::load_scenario(kData / "reference_scenario.json");
  const auto grid = coverage::compute_coverage(s, coverage::default_grid_spec(s, 1.0));
  const auto golden = io::read_bytes(kData / "golden" / "coverage.cgrd");
  EXPECT_EQ(io::encode_grid(grid), golden);
  EXPECT_EQ(io::decode_grid(golden).grid, grid);
}

TEST(GridIo, RoundTripAndCorruption) {
  const auto s = scenes::random_scene(4, 20.0);
  const auto grid = coverage::compute_coverage(s, coverage::default_grid_spec(s, 0.5));
  const auto bytes = io::encode_grid(grid, 42);
  const auto back = io::decode_grid(bytes);
  EXPECT_EQ(back.grid, grid);
  EXPECT_EQ(back.scenario_version, 42u);

  auto truncated = bytes;
  truncated.resize(bytes.size() - 7);
  const auto e1 = expect_throw<CorruptFile>([&] { io::decode_grid(truncated); });
  EXPECT_LE(e1.offset(), truncated.size());

  auto flipped = bytes;
  flipped[60] ^= 0x10;
  const auto e2 = expect_throw<CorruptFile>([&] { io::decode_grid(flipped); });
  EXPECT_LE(e2.offset(), bytes.size());

  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_EQ(expect_throw<CorruptFile>([&] { io::decode_grid(magic); }).offset(), 0u);

  auto version = bytes;
  version[4] = 9;
  EXPECT_THROW(io::decode_grid(version), UnsupportedVersion);

  const std::string csv = io::grid_to_csv(grid);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), grid.cells.size() + 1);
}

TEST(SyncIo, RoundTripAndErrors) {
  std::vector<sync::FrameStamp> stamps;
  for (int i = 0; i < 50; ++i) stamps.push_back({1 + i % 3, i / 3, 1'700'000'000'000'000'000LL + i * 40'000'000LL, 5'000'000LL * i});
  const std::string text = io::write_sync_csv(stamps);
  EXPECT_EQ(text.substr(0, text.find('\n')), io::kSyncHeader);
  EXPECT_EQ(io::read_sync_csv(text), stamps);
  EXPECT_TRUE(io::read_sync_csv(io::write_sync_csv({})).empty());

  const std::string bad = std::string(io::kSyncHeader) + "\n1,0,0,0\n2,x,0,0\n";
  const auto e = expect_throw<ParseError>([&] { io::read_sync_csv(bad); });
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 3u);
  EXPECT_THROW(io::read_sync_csv("camera,seq\n"), ParseError);
}

TEST(TrajectoryIo, RoundTripAndErrors) {
  std::vector<io::TrajectoryRecord> rec;
  for (int i = 0; i < 4; ++i) {
    io::TrajectoryRecord r;
    r.track_id = 1 + i / 2;
    r.trigger_utc_ns = i * 40'000'000LL;
    r.x_m = 1.25 * i;
    r.y_m = -2.5;
    r.vx = 0.5;
    r.n_views = i;
    if (i == 1) r.keypoints_m["head"] = Vec3(1, 2, 1.75);
    rec.push_back(r);
  }
  const std::string text = io::write_trajectories(rec);
  EXPECT_EQ(io::read_trajectories(text), rec);
  const std::string empty = io::write_trajectories({});
  EXPECT_EQ(std::count(empty.begin(), empty.end(), '\n'), 1);

  std::string wrong_version = text;
  wrong_version.replace(wrong_version.find("\"version\":1"), 11, "\"version\":7");
  EXPECT_THROW(io::read_trajectories(wrong_version), UnsupportedVersion);
  const std::string broken = text.substr(0, text.find('\n', text.find('\n') + 1) + 1) + "{\"track_id\":\n";
  EXPECT_EQ(expect_throw<ParseError>([&] { io::read_trajectories(broken); }).line(), 3u);
}

TEST(CandidatesIo, RoundTrip) {
  io::CandidateSet set;
  set.candidates = {{1, Vec2(10, -4), 6.5, geometry::deg_to_rad(135.0), geometry::deg_to_rad(-20.0)},
                    {2, Vec2(-3, 12), 5.0, geometry::deg_to_rad(270.0), geometry::deg_to_rad(-18.0)}};
  set.yaw_steps = 4;
  const std::string text = io::write_candidates(set);
  const auto back = io::read_candidates(text);
  EXPECT_EQ(io::write_candidates(back), text);
  ASSERT_EQ(back.candidates.size(), 2u);
  EXPECT_NEAR(back.candidates[0].yaw_rad, set.candidates[0].yaw_rad, 1e-12);
  EXPECT_EQ(back.yaw_steps, 4);
  Json j = Json::parse(text);
  j["schema_version"] = 3;
  EXPECT_THROW(io::read_candidates(j.dump()), UnsupportedVersion);
}

namespace {

scene::Scenario small_recording_scene() {
  scene::Scenario s;
  for (int i = 0; i < 3; ++i) s.cameras.push_back(scenes::camera(i + 1, 0, 3.0 * i, 5, 0, -10, 60, 60, 64, 48));
  s.duration_s = 2.0;
  return s;
}

}  // namespace

TEST(RecordingIo, FullPayloadRoundTrip) {
  const auto s = small_recording_scene();
  pipeline::PipelineConfig cfg;
  cfg.workers = 2;
  cfg.seed = 5;
  const auto r = pipeline::run_pipeline(s, cfg);
  const auto dir = scratch("full");
  io::RecordingManifest m;
  m.payload = io::PayloadMode::kFull;
  m.scenario_hash = io::scenario_hash(s);
  m.stats = io::throughput_stats_json(r.stats);
  io::write_recording(dir, r.recording, m);
  const auto back = io::read_recording(dir);
  EXPECT_EQ(back.recording, r.recording);
  EXPECT_EQ(back.manifest.scenario_hash, m.scenario_hash);
  EXPECT_EQ(back.manifest.payload, io::PayloadMode::kFull);

  // A flipped payload byte fails its chunk CRC.
  auto bytes = io::read_bytes(dir / "cam1.chunks");
  bytes[bytes.size() - 3] ^= 0xff;
  io::write_bytes(dir / "cam1.chunks", bytes);
  const auto e = expect_throw<CorruptRecording>([&] { io::read_recording(dir); });
  EXPECT_LE(e.offset(), bytes.size());
  fs::remove_all(dir);
}

TEST(RecordingIo, ReferenceTenSecondsLayout) {
  auto s = scene::reference_scenario();
  pipeline::PipelineConfig cfg;
  cfg.duration_s = 10.0;
  const auto r = pipeline::run_pipeline(s, cfg);
  const auto dir = scratch("reference");
  io::write_recording(dir, r.recording, io::RecordingManifest{});
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"cam1.chunks", "cam2.chunks", "cam3.chunks", "cam4.chunks",
                                             "cam5.chunks", "cam6.chunks", "manifest.json", "sync.csv"}));
  const auto back = io::read_recording(dir);
  EXPECT_EQ(back.recording, r.recording);
  EXPECT_EQ(back.recording.stamps.size(), 6u * 251u);
  fs::remove_all(dir);
}

TEST(RecordingIo, CorruptionIsReportedWithOffset) {
  const auto s = small_recording_scene();
  pipeline::PipelineConfig cfg;
  cfg.workers = 2;
  const auto r = pipeline::run_pipeline(s, cfg);
  const auto dir = scratch("corrupt");
  const auto reset = [&] {
    fs::remove_all(dir);
    io::write_recording(dir, r.recording, io::RecordingManifest{});
  };

  reset();
  auto bytes = io::read_bytes(dir / "cam2.chunks");
  bytes.resize(bytes.size() - 5);
  io::write_bytes(dir / "cam2.chunks", bytes);
  const auto e1 = expect_throw<CorruptRecording>([&] { io::read_recording(dir); });
  EXPECT_LE(e1.offset(), bytes.size());

  reset();
  bytes = io::read_bytes(dir / "cam3.chunks");
  bytes[10 + 4 + 3] ^= 0x01;  // first_seq of the first record
  io::write_bytes(dir / "cam3.chunks", bytes);
  EXPECT_THROW(io::read_recording(dir), CorruptRecording);

  reset();
  fs::remove(dir / "sync.csv");
  EXPECT_THROW(io::read_recording(dir), CorruptRecording);

  reset();
  std::string sync_text = io::read_text(dir / "sync.csv");
  sync_text.pop_back();
  sync_text.back() = sync_text.back() == '1' ? '2' : '1';
  sync_text.push_back('\n');
  io::write_text(dir / "sync.csv", sync_text);
  EXPECT_THROW(io::read_recording(dir), CorruptRecording);

  reset();
  Json manifest = Json::parse(io::read_text(dir / "manifest.json"));
  manifest["format_version"] = 9;
  io::write_text(dir / "manifest.json", manifest.dump());
  EXPECT_THROW(io::read_recording(dir), UnsupportedVersion);

  EXPECT_THROW(io::read_recording(dir / "missing"), CorruptRecording);
  fs::remove_all(dir);
}
