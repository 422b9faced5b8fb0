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

#include <vector>

#include "junction/common/canonical_json.hpp"
#include "junction/coverage/placement.hpp"
#include "junction/coverage/report.hpp"
#include "junction/coverage/stereo_pairs.hpp"
#include "junction/perception/chain.hpp"

namespace junction::io {

/// Structured forms shared by the CLI reports and the planner API.
Json metrics_json(const coverage::CoverageMetrics& m);
Json pairs_json(const std::vector<coverage::StereoPairSpec>& pairs);
Json grid_spec_json(const coverage::GridSpec& spec);
Json placement_json(const coverage::PlacementResult& r);
Json accuracy_json(const perception::AccuracyReport& a);

}  // namespace junction::io
