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

#ifndef HATLAS_GOAL_GENERATION_H_
#define HATLAS_GOAL_GENERATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hatlas/distances.h"
#include "hatlas/env.h"
#include "hatlas/learner.h"
#include "hatlas/random.h"
#include "hatlas/replay.h"

namespace hatlas {

// Initial state and goal of one task.
struct TaskPair {
  EnvState s0;
  Vec3 goal = Vec3::Zero();
};

struct HggParams {
  // Weight of the initial-state distance.
  double c = 3.0;
  // Lipschitz constant; the value term is weighted by 1 / lipschitz.
  double lipschitz = 5.0;
  // Target tasks sampled per iteration.
  int num_targets = 50;
  // Exploration episodes (intermediate tasks) per iteration.
  int num_episodes = 50;
  // Fraction of hindsight goals that must be close to their targets before
  // handing off to plain HER.
  double delta_stop = 0.9;
  // Closeness radius for the hand-off test, meters.
  double eps_close = 0.05;
  // Matching runs over this many most recent trajectories.
  int pool_size = 100;
  MetricMode metric = MetricMode::kGraph;

  void Validate() const;
};

// Costs at or beyond this value mark a pair as unusable.
inline constexpr double kInfeasibleCost = 1e6;

struct TrajectoryCost {
  double cost = 0.0;
  int argmin_t = 0;
};

// w((s0^, g^), tau) = c * |m(s0^) - m(s0)| + min_t (d(g^, m(s_t)) -
// V(s0 || m(s_t)) / L). Ties in t go to the earliest step. Throws
// Error(kAllInfinite) when d is infinite at every step and
// Error(kInvalidArgument) for an empty trajectory.
TrajectoryCost ComputeTrajectoryCost(const TaskPair& target,
                                     const Trajectory& traj,
                                     const Learner& learner,
                                     const HggParams& params,
                                     const GoalMetric& metric);

struct MatchedPair {
  TaskPair target;
  std::uint64_t trajectory_id = 0;
  // Position of the trajectory in the candidate pool.
  int pool_index = 0;
  int t = 0;
  Vec3 hindsight_goal = Vec3::Zero();
  // Initial state of the matched trajectory.
  EnvState s0;
  double cost = 0.0;
};

struct GoalSelection {
  std::vector<MatchedPair> matched;
  double total_cost = 0.0;
};

// Full K x pool cost matrix; infinite costs are replaced by kInfeasibleCost.
struct CostMatrix {
  Eigen::MatrixXd cost;
  Eigen::MatrixXi argmin_t;
};
CostMatrix BuildCostMatrix(std::span<const TaskPair> targets,
                           std::span<const Trajectory* const> pool,
                           const Learner& learner, const HggParams& params,
                           const GoalMetric& metric);

// Matches every target to a distinct pool trajectory minimizing the summed
// cost (exact assignment), and takes each hindsight goal at that pair's
// minimizing step. Throws Error(kInsufficientTrajectories) when the pool is
// smaller than the target set and Error(kInfeasible) when the optimum needs
// an unusable pair.
GoalSelection SelectTrajectories(std::span<const TaskPair> targets,
                                 std::span<const Trajectory* const> pool,
                                 const Learner& learner,
                                 const HggParams& params,
                                 const GoalMetric& metric);

// Fraction of matched pairs whose hindsight goal lies within eps_close
// (euclidean) of its target goal.
double CloseFraction(const GoalSelection& selection, const HggParams& params);

// True iff CloseFraction >= delta_stop.
bool StopCondition(const GoalSelection& selection, const HggParams& params);

// `count` exploration tasks (target initial state, hindsight goal) drawn
// uniformly with replacement from the matched pairs.
std::vector<TaskPair> IntermediateTasks(const GoalSelection& selection,
                                        int count, Rng& rng);

}  // namespace hatlas

#endif  // HATLAS_GOAL_GENERATION_H_
