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

#ifndef HATLAS_ASSIGNMENT_H_
#define HATLAS_ASSIGNMENT_H_

#include <vector>

#include <Eigen/Core>

namespace hatlas {

struct Assignment {
  // column_of_row[r] is the column matched to row r; all distinct.
  std::vector<int> column_of_row;
  double total_cost = 0.0;
};

// Exact minimum-cost assignment of every row to a distinct column
// (Kuhn-Munkres with potentials, O(rows^2 * cols)). Requires
// rows <= cols and finite costs; throws Error(kInvalidArgument) otherwise.
Assignment SolveAssignment(const Eigen::MatrixXd& cost);

}  // namespace hatlas

#endif  // HATLAS_ASSIGNMENT_H_
