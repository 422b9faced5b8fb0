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

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "junction/common/error.hpp"

namespace {

using namespace junction;
using namespace junction::cli;

void add_common(CLI::App* app, CommonOptions& c, bool needs_scenario = true) {
  auto* s = app->add_option("--scenario", c.scenario, "Scenario JSON file");
  if (needs_scenario) s->required();
  app->add_option("--out", c.out, "Output directory");
  app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app->add_option("--threads", c.threads, "Worker threads (1 = single-threaded)")
      ->envname("JUNCTION_SIM_THREADS")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_flag("--json", c.json, "Print the report as JSON");
  app->add_flag("-v,--verbose", c.verbose, "Print timings to stderr");
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kInfeasible: return kExitInfeasible;
    case ErrorKind::kCorruptRecording:
    case ErrorKind::kCorruptFile: return kExitCorruptRecording;
    default: return kExitInvalidInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Junction camera installation toolkit"};
  app.require_subcommand(1);

  CommonOptions common;

  CoverageArgs cov;
  auto* coverage = app.add_subcommand("coverage", "Compute the coverage grid and metrics");
  add_common(coverage, common);
  coverage->add_option("--cell", cov.cell_m, "Grid cell size in meters")->check(CLI::PositiveNumber)->capture_default_str();
  coverage->add_flag("--csv", cov.csv, "Also write the grid as CSV");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Optimize camera placement over candidate mounts");
  add_common(plan_cmd, common);
  plan_cmd->add_option("--candidates", plan.candidates, "Candidate mounts JSON file")->required();
  plan_cmd->add_option("--n", plan.n, "Number of cameras to place")->capture_default_str();
  plan_cmd->add_option("--w-stereo", plan.w_stereo, "Weight of the inner stereo fraction")->capture_default_str();
  plan_cmd->add_option("--w-crosswalk", plan.w_crosswalk, "Weight of the crosswalk stereo fraction")->capture_default_str();
  plan_cmd->add_option("--w-approach", plan.w_approach, "Weight of approach coverage")->capture_default_str();
  plan_cmd->add_option("--w-bicycle", plan.w_bicycle, "Weight of bicycle lane stereo fraction")->capture_default_str();
  plan_cmd->add_option("--restarts", plan.restarts, "Extra local-search starts")->capture_default_str();

  RecordArgs rec;
  auto* record = app.add_subcommand("record", "Simulate the recording pipeline");
  add_common(record, common);
  record->add_option("--duration", rec.duration_s, "Recording length in seconds");
  record->add_option("--workers", rec.workers, "Encoder workers (two streams each)")->capture_default_str();
  record->add_option("--throughput", rec.throughput_fps, "Encode throughput per worker, frames/s")->capture_default_str();
  record->add_option("--channel-capacity", rec.channel_capacity, "Source channel capacity, frames")->capture_default_str();
  record->add_option("--chunk-frames", rec.chunk_frames, "Frames per encoded chunk")->capture_default_str();
  record->add_option("--jitter-ns", rec.jitter_ns, "Arrival jitter standard deviation, ns")->capture_default_str();
  record->add_option("--budget", rec.budget, "Storage capacity, e.g. 576TB");
  record->add_option("--ratio", rec.ratio, "Compression ratio for the storage estimate")->capture_default_str();
  record->add_flag("--full-payload", rec.full_payload, "Write chunk payload bytes");

  PerceiveArgs per;
  auto* perceive = app.add_subcommand("perceive", "Run the perception chain and export trajectories");
  add_common(perceive, common);
  perceive->add_option("--recording", per.recording, "Recording directory supplying frame availability");
  perceive->add_option("--duration", per.duration_s, "Processed span in seconds");
  perceive->add_option("--sigma", per.sigma_px, "Pixel noise standard deviation")->capture_default_str();
  perceive->add_option("--miss", per.miss, "Base miss probability")->capture_default_str();
  perceive->add_option("--fp-rate", per.fp_rate, "False positives per frame")->capture_default_str();
  perceive->add_flag("--keypoints", per.keypoints, "Triangulate head, pelvis and feet keypoints");

  ServeArgs srv;
  auto* serve = app.add_subcommand("serve", "Serve the planner API");
  add_common(serve, common);
  serve->add_option("--port", srv.port, "TCP port (0 picks a free one)")->capture_default_str();
  serve->add_option("--cell", srv.cell_m, "Grid cell size for recomputes")->check(CLI::PositiveNumber)->capture_default_str();
  serve->add_option("--static", srv.static_root, "Directory with UI assets");

  auto* reference = app.add_subcommand("reference", "Write the reference scenario document");
  add_common(reference, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (coverage->parsed()) cmd_coverage(common, cov);
    else if (plan_cmd->parsed()) cmd_plan(common, plan);
    else if (record->parsed()) cmd_record(common, rec);
    else if (perceive->parsed()) cmd_perceive(common, per);
    else if (serve->parsed()) return cmd_serve(common, srv);
    else if (reference->parsed()) cmd_reference(common);
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
