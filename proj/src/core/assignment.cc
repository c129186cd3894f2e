// core/assignment.cc

// Copyright 2026 diarkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/assignment.h"

#include <limits>

namespace diarkit {

namespace {

// Potentials form of the Hungarian algorithm on an n x m cost matrix with
// n <= m; returns for each row its column, minimizing total cost.
std::vector<int> MinCostAssignment(const Eigen::MatrixXd &cost) {
  const int n = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> col_row(m + 1, 0);  // row matched to column, 1-based
  std::vector<int> way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    col_row[0] = i;
    int j0 = 0;
    std::vector<double> min_slack(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      int i0 = col_row[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[col_row[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_row[j0] != 0);
    do {
      int j1 = way[j0];
      col_row[j0] = col_row[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (col_row[j] > 0) row_col[col_row[j] - 1] = j - 1;
  }
  return row_col;
}

}  // namespace

std::vector<int> MaxWeightAssignment(const Eigen::MatrixXd &weight) {
  const int n = static_cast<int>(weight.rows());
  const int m = static_cast<int>(weight.cols());
  if (n == 0 || m == 0) return std::vector<int>(n, -1);
  if (n <= m) return MinCostAssignment(-weight);
  std::vector<int> col_row = MinCostAssignment(-weight.transpose());
  std::vector<int> row_col(n, -1);
  for (int j = 0; j < m; ++j) {
    if (col_row[j] >= 0) row_col[col_row[j]] = j;
  }
  return row_col;
}

}  // namespace diarkit
