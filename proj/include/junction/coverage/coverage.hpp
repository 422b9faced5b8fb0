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

#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "junction/coverage/grid.hpp"
#include "junction/coverage/stereo_pairs.hpp"
#include "junction/coverage/visibility.hpp"

namespace junction::coverage {

/// Thrown when a progress callback asks compute_coverage to stop.
class Cancelled : public std::exception {
 public:
  const char* what() const noexcept override { return "coverage computation cancelled"; }
};

struct CoverageOptions {
  PairConstraints constraints;
  /// Valid stereo pairs; enumerated from the scenario when absent.
  std::optional<std::vector<StereoPairSpec>> pairs;
  /// Worker threads over grid rows; 0 picks the hardware concurrency.
  int threads = 0;
  std::size_t max_cells = kDefaultMaxCells;
  /// Called after each finished row with (rows_done, rows_total); returning
  /// false cancels the computation.
  std::function<bool(int, int)> progress;
};

/// Per-cell visibility of one camera over a grid (1 = visible), evaluated at
/// the reference height.
std::vector<std::uint8_t> visibility_map(const geometry::CameraModel& cam,
                                         std::span<const Prism> prisms, const GridSpec& spec);

/// Occlusion-aware mono and stereo coverage. Throws ResourceLimit when the
/// grid exceeds options.max_cells and Cancelled when progress returns false.
CoverageGrid compute_coverage(const scene::Scenario& s, const GridSpec& spec,
                              const CoverageOptions& options = {});

/// Fills mono_count and stereo_pairs of a grid whose visible masks are set.
void finalize_cells(CoverageGrid& grid, std::span<const StereoPairSpec> pairs);

}  // namespace junction::coverage
