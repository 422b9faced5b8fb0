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

#include <limits>
#include <vector>

namespace junction {

/// Entries with this cost may never be assigned.
inline constexpr double kForbidden = std::numeric_limits<double>::infinity();

struct AssignmentResult {
  /// row_to_col[r] is the column assigned to row r, or -1.
  std::vector<int> row_to_col;
  std::vector<int> col_to_row;
  double total_cost = 0.0;
};

/// Rectangular linear assignment (Hungarian / Kuhn-Munkres, O(n^3)).
///
/// Among all one-to-one assignments that use only finite-cost entries, picks
/// one with the largest number of assigned rows and, among those, the
/// smallest summed cost. Rows or columns left over are unassigned.
AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace junction
