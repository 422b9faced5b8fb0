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

#include <cstdint>
#include <optional>
#include <string>

#include "junction/common/canonical_json.hpp"

namespace junction::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitCorruptRecording = 4;

struct CommonOptions {
  std::string scenario;
  std::string out;
  std::uint64_t seed = 0;
  int threads = 1;
  bool json = false;
  bool verbose = false;
};

struct CoverageArgs {
  double cell_m = 0.25;
  bool csv = false;
};

struct PlanArgs {
  std::string candidates;
  int n = 6;
  double w_stereo = 1.0;
  double w_crosswalk = 1.0;
  double w_approach = 1.0;
  double w_bicycle = 0.0;
  int restarts = 4;
};

struct RecordArgs {
  std::optional<double> duration_s;
  int workers = 3;
  double throughput_fps = 60.0;
  int channel_capacity = 50;
  int chunk_frames = 25;
  std::int64_t jitter_ns = 0;
  std::optional<std::string> budget;
  double ratio = 8.0;
  bool full_payload = false;
};

struct PerceiveArgs {
  std::string recording;
  std::optional<double> duration_s;
  double sigma_px = 0.0;
  double miss = 0.0;
  double fp_rate = 0.0;
  bool keypoints = false;
};

struct ServeArgs {
  unsigned short port = 8080;
  double cell_m = 0.5;
  std::string static_root;
};

/// Each command prints its report (text or JSON) to stdout, writes its
/// artifacts below CommonOptions::out when given, and returns the report.
Json cmd_coverage(const CommonOptions& c, const CoverageArgs& a);
Json cmd_plan(const CommonOptions& c, const PlanArgs& a);
Json cmd_record(const CommonOptions& c, const RecordArgs& a);
Json cmd_perceive(const CommonOptions& c, const PerceiveArgs& a);
int cmd_serve(const CommonOptions& c, const ServeArgs& a);
Json cmd_reference(const CommonOptions& c);

/// Decimal capacity such as "576TB", "1.5PB", "800GB" or a bare number of
/// terabytes. Throws InvalidArgument for anything else.
double parse_capacity_tb(const std::string& text);

/// "key.sub[0].field: value" lines with canonical number formatting.
std::string text_report(const Json& report);

}  // namespace junction::cli
