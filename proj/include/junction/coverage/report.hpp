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

#include <string>
#include <vector>

#include "junction/coverage/grid.hpp"
#include "junction/scene/scenario.hpp"

namespace junction::coverage {

struct CrosswalkMetric {
  int index = 0;
  double stereo_fraction = 0.0;
  std::size_t cells = 0;
};

struct ApproachMetric {
  std::string direction;
  /// Farthest contiguous mono-covered arc length from the polyline start.
  double covered_m = 0.0;
  double length_m = 0.0;
};

struct CoverageMetrics {
  double stereo_fraction_inner = 0.0;
  std::vector<CrosswalkMetric> crosswalks;
  std::vector<ApproachMetric> approaches;
  double bicycle_lane_stereo_fraction = 0.0;
};

/// Cell membership of the layout's regions on one grid; reusable across
/// grids that share the spec.
class ReportIndex {
 public:
  ReportIndex(const GridSpec& spec, const scene::JunctionLayout& layout);

  CoverageMetrics evaluate(const CoverageGrid& grid) const;
  const GridSpec& spec() const { return spec_; }

 private:
  struct ApproachSamples {
    std::string direction;
    double length_m = 0.0;
    double step_m = 0.0;
    /// Cell index per sample, -1 when the sample falls outside the grid.
    std::vector<long long> cells;
  };

  GridSpec spec_;
  std::vector<std::size_t> inner_cells_;
  std::vector<std::pair<int, std::vector<std::size_t>>> crosswalk_cells_;
  std::vector<std::size_t> bicycle_cells_;
  std::vector<ApproachSamples> approaches_;
};

/// Coverage metrics of a grid over the layout. Throws InvalidArgument when
/// the grid does not contain the inner region.
CoverageMetrics coverage_report(const CoverageGrid& grid, const scene::JunctionLayout& layout);

}  // namespace junction::coverage
