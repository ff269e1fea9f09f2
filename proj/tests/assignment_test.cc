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

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "oracles.h"

namespace hatlas {
namespace {

Eigen::MatrixXd RandomCost(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

double TotalOf(const Eigen::MatrixXd& cost, const Assignment& a) {
  double total = 0.0;
  for (size_t r = 0; r < a.column_of_row.size(); ++r) {
    total += cost(static_cast<Eigen::Index>(r), a.column_of_row[r]);
  }
  return total;
}

void ExpectInjective(const Assignment& a, int cols) {
  std::set<int> used;
  for (int c : a.column_of_row) {
    EXPECT_GE(c, 0);
    EXPECT_LT(c, cols);
    EXPECT_TRUE(used.insert(c).second) << "column " << c << " used twice";
  }
}

TEST(AssignmentTest, TwoByTwo) {
  Eigen::MatrixXd cost(2, 2);
  cost << 1, 2, 3, 1;
  const Assignment a = SolveAssignment(cost);
  EXPECT_EQ(a.column_of_row, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(a.total_cost, 2.0);
  EXPECT_DOUBLE_EQ(testing::MinCostByEnumeration(cost), 2.0);
}

TEST(AssignmentTest, RectangularPicksCheapColumns) {
  Eigen::MatrixXd cost(2, 4);
  cost << 9, 9, 1, 5,
          9, 2, 1, 9;
  const Assignment a = SolveAssignment(cost);
  EXPECT_EQ(a.column_of_row, (std::vector<int>{2, 1}));
  EXPECT_DOUBLE_EQ(a.total_cost, 3.0);
}

TEST(AssignmentTest, ThreeOverFiveMatchesEnumeration) {
  Eigen::MatrixXd cost(3, 5);
  cost << 4, 1, 3, 7, 2,
          2, 0, 5, 3, 6,
          3, 2, 2, 1, 8;
  const Assignment a = SolveAssignment(cost);
  ExpectInjective(a, 5);
  EXPECT_DOUBLE_EQ(a.total_cost, testing::MinCostByEnumeration(cost));
  EXPECT_DOUBLE_EQ(TotalOf(cost, a), a.total_cost);
}

TEST(AssignmentTest, EmptyRows) {
  const Assignment a = SolveAssignment(Eigen::MatrixXd(0, 3));
  EXPECT_TRUE(a.column_of_row.empty());
  EXPECT_EQ(a.total_cost, 0.0);
}

TEST(AssignmentTest, MoreRowsThanColumnsThrows) {
  EXPECT_ANY_THROW(SolveAssignment(Eigen::MatrixXd::Zero(3, 2)));
}

TEST(AssignmentTest, RandomMatricesMatchEnumeration) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = dim(rng);
    const int p = std::uniform_int_distribution<int>(k, 8)(rng);
    const Eigen::MatrixXd cost = RandomCost(rng, k, p);
    const Assignment a = SolveAssignment(cost);
    ExpectInjective(a, p);
    EXPECT_NEAR(a.total_cost, testing::MinCostByEnumeration(cost), 1e-9)
        << "trial " << trial;
  }
}

TEST(AssignmentTest, IntegerCostsAreExact) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(0, 20);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd cost(4, 6);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 6; ++j) cost(i, j) = entry(rng);
    }
    EXPECT_EQ(SolveAssignment(cost).total_cost,
              testing::MinCostByEnumeration(cost));
  }
}

TEST(AssignmentTest, InvariantUnderRowShiftAndScaling) {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd cost = RandomCost(rng, 4, 6);
  const Assignment base = SolveAssignment(cost);
  Eigen::MatrixXd shifted = 2.5 * cost;
  for (int i = 0; i < 4; ++i) shifted.row(i).array() += 10.0 * i;
  EXPECT_EQ(SolveAssignment(shifted).column_of_row, base.column_of_row);
}

TEST(AssignmentTest, SentinelCostsAvoidedWhenPossible) {
  Eigen::MatrixXd cost(2, 3);
  cost << 1e6, 1, 1e6,
          1e6, 1e6, 4;
  const Assignment a = SolveAssignment(cost);
  EXPECT_EQ(a.column_of_row, (std::vector<int>{1, 2}));
}

}  // namespace
}  // namespace hatlas
