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

#include "junction/common/assignment.hpp"

#include <algorithm>
#include <cmath>

#include "junction/common/error.hpp"

namespace junction {

namespace {

// Potential-based Hungarian method on an n x m matrix with n <= m.
// Returns, for each row, the assigned column.
std::vector<int> hungarian(const std::vector<std::vector<double>>& a, int n, int m) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost) {
  AssignmentResult result;
  const int rows = static_cast<int>(cost.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(cost.front().size());
  result.row_to_col.assign(rows, -1);
  result.col_to_row.assign(cols, -1);
  if (rows == 0 || cols == 0) return result;

  double max_finite = 0.0;
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != cols) {
      throw InvalidArgument("assignment cost matrix is not rectangular");
    }
    for (double c : row) {
      if (std::isnan(c)) throw InvalidArgument("assignment cost is NaN");
      if (c < 0.0) throw InvalidArgument("assignment costs must be non-negative");
      if (std::isfinite(c)) max_finite = std::max(max_finite, c);
    }
  }
  // A forbidden entry costs more than any complete set of finite entries, so
  // the solver first maximizes the number of finite matches.
  const double big = (max_finite + 1.0) * static_cast<double>(std::max(rows, cols) + 1);

  const bool transpose = rows > cols;
  const int n = transpose ? cols : rows;
  const int m = transpose ? rows : cols;
  std::vector<std::vector<double>> a(n, std::vector<double>(m));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double c = transpose ? cost[j][i] : cost[i][j];
      a[i][j] = std::isfinite(c) ? c : big;
    }
  }
  const auto assigned = hungarian(a, n, m);
  for (int i = 0; i < n; ++i) {
    const int j = assigned[i];
    if (j < 0) continue;
    const int r = transpose ? j : i;
    const int c = transpose ? i : j;
    if (!std::isfinite(cost[r][c])) continue;
    result.row_to_col[r] = c;
    result.col_to_row[c] = r;
    result.total_cost += cost[r][c];
  }
  return result;
}

}  // namespace junction
