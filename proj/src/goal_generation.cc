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

#include "hatlas/goal_generation.h"

#include <cmath>
#include <optional>
#include <sstream>

#include "hatlas/assignment.h"
#include "hatlas/error.h"

namespace hatlas {
namespace {

double ValueWeight(const HggParams& params) { return 1.0 / params.lipschitz; }

// Distances from one goal to many, with the graph metric's vertex lookups
// hoisted out of the inner loops.
class DistanceCache {
 public:
  DistanceCache(const GoalMetric& metric, std::span<const Vec3> targets)
      : metric_(metric),
        graph_(dynamic_cast<const GraphMetric*>(&metric)),
        targets_(targets) {
    if (graph_ != nullptr) {
      for (const Vec3& g : targets) target_vertices_.push_back(graph_->TryNearestVertex(g));
    }
  }

  // Prepares the achieved goals of one trajectory.
  void SetTrajectory(const Trajectory& traj) {
    achieved_ = &traj.achieved;
    if (graph_ != nullptr) {
      vertices_.clear();
      for (const Vec3& g : traj.achieved) vertices_.push_back(graph_->TryNearestVertex(g));
    }
  }

  double Distance(size_t target, size_t t) const {
    if (graph_ == nullptr) {
      return metric_.Distance(targets_[target], (*achieved_)[t]);
    }
    const auto& a = target_vertices_[target];
    const auto& b = vertices_[t];
    if (!a || !b) return kInfinity;
    return graph_->VertexDistance(*a, *b);
  }

 private:
  const GoalMetric& metric_;
  const GraphMetric* graph_;
  std::span<const Vec3> targets_;
  std::vector<std::optional<VertexId>> target_vertices_;
  const std::vector<Vec3>* achieved_ = nullptr;
  std::vector<std::optional<VertexId>> vertices_;
};

}  // namespace

void HggParams::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::kConfig, "hgg: " + what);
  };
  if (!(c >= 0.0)) fail("c must be >= 0");
  if (!(lipschitz > 0.0)) fail("lipschitz must be > 0");
  if (num_targets < 1) fail("num_targets (K) must be >= 1");
  if (num_episodes < 1) fail("num_episodes (M) must be >= 1");
  if (!(delta_stop >= 0.0 && delta_stop <= 1.0)) {
    fail("delta_stop must be in [0, 1]");
  }
  if (!(eps_close >= 0.0)) fail("eps_close must be >= 0");
  if (pool_size < num_targets) fail("pool_size must be >= num_targets");
}

TrajectoryCost ComputeTrajectoryCost(const TaskPair& target,
                                     const Trajectory& traj,
                                     const Learner& learner,
                                     const HggParams& params,
                                     const GoalMetric& metric) {
  if (traj.states.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty trajectory");
  }
  const double start_term =
      params.c * (AchievedGoal(target.s0) - traj.achieved.front()).norm();
  TrajectoryCost best{kInfinity, -1};
  for (size_t t = 0; t < traj.achieved.size(); ++t) {
    const double d = metric.Distance(target.goal, traj.achieved[t]);
    if (!std::isfinite(d)) continue;
    const double term =
        d - ValueWeight(params) * learner.Value(traj.states.front(),
                                                traj.achieved[t]);
    if (term < best.cost) {
      best.cost = term;
      best.argmin_t = static_cast<int>(t);
    }
  }
  if (best.argmin_t < 0) {
    throw Error(ErrorKind::kAllInfinite,
                "no step of trajectory " + std::to_string(traj.id) +
                    " has a finite distance to the target");
  }
  best.cost += start_term;
  return best;
}

CostMatrix BuildCostMatrix(std::span<const TaskPair> targets,
                           std::span<const Trajectory* const> pool,
                           const Learner& learner, const HggParams& params,
                           const GoalMetric& metric) {
  const auto k = static_cast<Eigen::Index>(targets.size());
  const auto p = static_cast<Eigen::Index>(pool.size());
  CostMatrix out;
  out.cost.setConstant(k, p, kInfeasibleCost);
  out.argmin_t.setZero(k, p);

  std::vector<Vec3> target_goals;
  target_goals.reserve(targets.size());
  for (const TaskPair& task : targets) target_goals.push_back(task.goal);
  DistanceCache cache(metric, target_goals);

  std::vector<double> value_term;
  for (Eigen::Index j = 0; j < p; ++j) {
    const Trajectory& traj = *pool[j];
    if (traj.states.empty()) continue;
    cache.SetTrajectory(traj);
    // The value term depends only on the trajectory, not on the target.
    value_term.resize(traj.achieved.size());
    for (size_t t = 0; t < traj.achieved.size(); ++t) {
      value_term[t] = ValueWeight(params) *
                      learner.Value(traj.states.front(), traj.achieved[t]);
    }
    for (Eigen::Index i = 0; i < k; ++i) {
      double best = kInfinity;
      int best_t = 0;
      for (size_t t = 0; t < traj.achieved.size(); ++t) {
        const double d = cache.Distance(static_cast<size_t>(i), t);
        if (!std::isfinite(d)) continue;
        const double term = d - value_term[t];
        if (term < best) {
          best = term;
          best_t = static_cast<int>(t);
        }
      }
      if (!std::isfinite(best)) continue;
      best += params.c *
              (AchievedGoal(targets[i].s0) - traj.achieved.front()).norm();
      out.cost(i, j) = std::min(best, kInfeasibleCost);
      out.argmin_t(i, j) = best_t;
    }
  }
  return out;
}

GoalSelection SelectTrajectories(std::span<const TaskPair> targets,
                                 std::span<const Trajectory* const> pool,
                                 const Learner& learner,
                                 const HggParams& params,
                                 const GoalMetric& metric) {
  if (pool.size() < targets.size()) {
    std::ostringstream os;
    os << "goal selection needs " << targets.size()
       << " distinct trajectories, pool holds " << pool.size();
    throw Error(ErrorKind::kInsufficientTrajectories, os.str());
  }
  GoalSelection selection;
  if (targets.empty()) return selection;
  const CostMatrix costs =
      BuildCostMatrix(targets, pool, learner, params, metric);
  const Assignment assignment = SolveAssignment(costs.cost);
  for (size_t i = 0; i < targets.size(); ++i) {
    const int j = assignment.column_of_row[i];
    const double cost = costs.cost(static_cast<Eigen::Index>(i), j);
    if (cost >= kInfeasibleCost) {
      throw Error(ErrorKind::kInfeasible,
                  "no finite-cost matching exists for target " +
                      std::to_string(i));
    }
    const Trajectory& traj = *pool[j];
    MatchedPair m;
    m.target = targets[i];
    m.trajectory_id = traj.id;
    m.pool_index = j;
    m.t = costs.argmin_t(static_cast<Eigen::Index>(i), j);
    m.hindsight_goal = traj.achieved[m.t];
    m.s0 = traj.states.front();
    m.cost = cost;
    selection.total_cost += cost;
    selection.matched.push_back(std::move(m));
  }
  return selection;
}

double CloseFraction(const GoalSelection& selection, const HggParams& params) {
  if (selection.matched.empty()) return 1.0;
  size_t close = 0;
  for (const MatchedPair& m : selection.matched) {
    if ((m.hindsight_goal - m.target.goal).norm() <= params.eps_close) ++close;
  }
  return static_cast<double>(close) /
         static_cast<double>(selection.matched.size());
}

bool StopCondition(const GoalSelection& selection, const HggParams& params) {
  return CloseFraction(selection, params) >= params.delta_stop;
}

std::vector<TaskPair> IntermediateTasks(const GoalSelection& selection,
                                        int count, Rng& rng) {
  if (selection.matched.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "cannot build intermediate tasks from an empty selection");
  }
  std::uniform_int_distribution<size_t> pick(0, selection.matched.size() - 1);
  std::vector<TaskPair> tasks;
  tasks.reserve(static_cast<size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const MatchedPair& m = selection.matched[pick(rng)];
    tasks.push_back({m.target.s0, m.hindsight_goal});
  }
  return tasks;
}

}  // namespace hatlas
