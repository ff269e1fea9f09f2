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

#ifndef HATLAS_TRAINER_H_
#define HATLAS_TRAINER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hatlas/distances.h"
#include "hatlas/env.h"
#include "hatlas/goal_generation.h"
#include "hatlas/learner.h"
#include "hatlas/random.h"
#include "hatlas/replay.h"

namespace hatlas {

enum class TrainMode { kGraphHgg, kHgg, kHer };

const char* TrainModeName(TrainMode mode);
// Accepts "g-hgg", "hgg" and "her"; throws Error(kInvalidArgument) otherwise.
TrainMode ParseTrainMode(const std::string& name);

struct TrainConfig {
  int iterations = 300;
  // Optimization steps per iteration.
  int optimization_steps = 40;
  int batch_size = 128;
  int eval_episodes = 20;
  // Buffer capacity in trajectories.
  int buffer_capacity = 5000;
  int k_future = 4;
  // Exploration episodes run the whole horizon instead of ending at the goal.
  bool full_horizon_exploration = true;
  std::uint64_t seed = 1;
  TrainMode mode = TrainMode::kGraphHgg;

  void Validate() const;
};

struct IterationMetrics {
  int iteration = 0;
  double success_rate = 0.0;
  // Mean hindsight-goal-to-target distance over the matched pairs; NaN when
  // no goal selection ran this iteration (or no graph is attached for d_G).
  double mean_graph_distance = 0.0;
  double mean_euclidean_distance = 0.0;
  // Fraction of matched pairs within eps_close of their target.
  double close_fraction = 0.0;
  // Hand-off to plain HER has happened (this or an earlier iteration).
  bool stopped = false;
  // Exploration used sampled target goals instead of hindsight goals.
  bool explored_targets = false;
  double seconds = 0.0;
};

// Runs one episode from task.s0 towards task.goal.
// Runs until success or the horizon; with `full_horizon` the episode keeps
// going after the goal is reached and always lasts the full horizon.
Trajectory Rollout(const Environment& env, Learner& learner,
                   const TaskPair& task, bool explore,
                   bool full_horizon = false);

// Fraction of greedy rollouts on freshly sampled target tasks that end at
// the goal.
double Evaluate(Learner& learner, const Environment& env, int episodes,
                Rng& rng);

// Iterative hindsight-goal curriculum: per iteration, sample target tasks,
// generate intermediate tasks (unless in HER mode or after hand-off), explore,
// store with hindsight relabeling, optimize and evaluate.
class Trainer {
 public:
  using SelectionObserver =
      std::function<void(int iteration, const GoalSelection& selection)>;

  // `graph` is required for TrainMode::kGraphHgg; in kHgg mode it is only
  // used to report graph distances; kHer never touches it.
  Trainer(Environment env, const TrainConfig& config, const HggParams& hgg,
          std::unique_ptr<Learner> learner,
          std::shared_ptr<const GraphMetric> graph);

  IterationMetrics RunIteration();

  int iteration() const { return iteration_; }
  bool stopped() const { return stopped_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  Learner& learner() { return *learner_; }
  const Environment& env() const { return env_; }
  const std::vector<TaskPair>& last_targets() const { return last_targets_; }
  const std::vector<TaskPair>& last_exploration_tasks() const {
    return last_tasks_;
  }
  void SetSelectionObserver(SelectionObserver observer) {
    observer_ = std::move(observer);
  }

  // Learner table, replay buffer and trainer RNG state under `dir`.
  void SaveCheckpoint(const std::string& dir) const;
  void LoadCheckpoint(const std::string& dir);

 private:
  Environment env_;
  TrainConfig config_;
  HggParams hgg_;
  std::unique_ptr<Learner> learner_;
  std::shared_ptr<const GraphMetric> graph_;
  EuclideanMetric euclidean_;
  ReplayBuffer buffer_;
  Rng task_rng_;
  Rng goal_rng_;
  Rng replay_rng_;
  int iteration_ = 0;
  bool stopped_ = false;
  std::vector<TaskPair> last_targets_;
  std::vector<TaskPair> last_tasks_;
  SelectionObserver observer_;
};

}  // namespace hatlas

#endif  // HATLAS_TRAINER_H_
