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

#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "junction/common/canonical_json.hpp"
#include "junction/coverage/coverage.hpp"
#include "junction/coverage/report.hpp"
#include "junction/io/scenario_io.hpp"

namespace junction::planner {

struct SessionOptions {
  double cell_m = 0.5;
  /// Coverage worker threads per recompute; 0 uses the hardware concurrency.
  int threads = 1;
  coverage::PairConstraints constraints;
  /// Called before each grid row of a recompute is reported; lets tests slow
  /// jobs down to stage races.
  std::function<void(int row)> row_hook;
};

enum class JobState { kIdle, kRunning, kDone, kCancelled };

const char* to_string(JobState s);

struct JobStatus {
  std::uint64_t job_id = 0;
  JobState state = JobState::kIdle;
  double progress = 0.0;
  /// Scenario version the job computes.
  std::uint64_t version = 0;
};

struct GridSnapshot {
  coverage::CoverageGrid grid;
  coverage::CoverageMetrics metrics;
  std::vector<coverage::StereoPairSpec> pairs;
  std::uint64_t version = 0;
};

/// HTTP-independent reply: status code and JSON body.
struct Reply {
  int status = 200;
  Json body = Json::object();
};

/// Single owner of the planning state. Edits are serialized under one
/// mutex; recomputes run on a background thread over a snapshot and can be
/// cancelled between grid rows. Events are delivered to the sink as compact
/// JSON text: version_changed, job_progress and job_done.
class Session {
 public:
  explicit Session(io::ScenarioDocument doc, SessionOptions options = {});
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  void set_event_sink(std::function<void(const std::string&)> sink);

  std::uint64_t version() const;
  scene::Scenario scenario() const;

  /// {"version": v, "document": {...}}.
  Reply get_scenario() const;

  /// Applies a camera patch: "pose" {position_m, yaw_deg, pitch_deg,
  /// roll_deg}, "intrinsics" {...}, "max_range_m", and an optional
  /// "version" that must equal the current one. 404 for an unknown camera,
  /// 409 for a stale version, 422 (with "path" and "rule") for a patch that
  /// breaks an invariant or has the wrong shape; 200 with the new version
  /// otherwise.
  Reply patch_camera(int camera_id, const Json& patch);

  /// Starts a recompute of the current version, cancelling a running one.
  /// Replies 202 with the job id and version.
  Reply start_recompute();

  /// Pairs of the current version.
  Reply get_pairs() const;

  JobStatus job() const;
  std::optional<GridSnapshot> latest_grid() const;

  /// Blocks until no job is running or the timeout passes; true when idle.
  bool wait_idle(double timeout_s) const;

 private:
  void emit(const Json& event);
  void run_job(std::uint64_t job_id, scene::Scenario snapshot, std::uint64_t version);
  void join_worker();

  SessionOptions options_;
  mutable std::mutex mutex_;
  mutable std::condition_variable idle_cv_;
  io::ScenarioDocument doc_;
  std::uint64_t version_ = 1;
  JobStatus job_;
  std::uint64_t next_job_ = 1;
  std::optional<GridSnapshot> grid_;
  std::mutex start_mutex_;
  std::thread worker_;
  std::mutex sink_mutex_;
  std::function<void(const std::string&)> sink_;
};

}  // namespace junction::planner
