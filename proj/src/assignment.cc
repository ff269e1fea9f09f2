// Copyright 2026 The Hindsight Atlas Authors
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

#include "hatlas/assignment.h"

#include <limits>

#include "hatlas/error.h"

namespace hatlas {

Assignment SolveAssignment(const Eigen::MatrixXd& cost) {
  const int rows = static_cast<int>(cost.rows());
  const int cols = static_cast<int>(cost.cols());
  if (rows > cols) {
    throw Error(ErrorKind::kInvalidArgument,
                "assignment needs at least as many columns as rows");
  }
  if (!cost.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "assignment costs must be finite");
  }
  Assignment result;
  if (rows == 0) return result;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual start column.
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<int> row_of_col(cols + 1, 0), way(cols + 1, 0);
  for (int r = 1; r <= rows; ++r) {
    row_of_col[0] = r;
    int j0 = 0;
    std::vector<double> min_slack(cols + 1, kInf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = row_of_col[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const int j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  result.column_of_row.assign(rows, -1);
  for (int j = 1; j <= cols; ++j) {
    if (row_of_col[j] != 0) result.column_of_row[row_of_col[j] - 1] = j - 1;
  }
  for (int r = 0; r < rows; ++r) {
    result.total_cost += cost(r, result.column_of_row[r]);
  }
  return result;
}

}  // namespace hatlas
