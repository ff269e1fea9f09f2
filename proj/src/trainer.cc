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

#include "hatlas/trainer.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "hatlas/error.h"

namespace hatlas {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream ids for MakeRng.
constexpr std::uint64_t kTaskStream = 1;
constexpr std::uint64_t kGoalStream = 2;
constexpr std::uint64_t kReplayStream = 3;
constexpr std::uint64_t kEvalStreamBase = 1'000'000;

}  // namespace

const char* TrainModeName(TrainMode mode) {
  switch (mode) {
    case TrainMode::kGraphHgg: return "g-hgg";
    case TrainMode::kHgg: return "hgg";
    case TrainMode::kHer: return "her";
  }
  return "?";
}

TrainMode ParseTrainMode(const std::string& name) {
  if (name == "g-hgg") return TrainMode::kGraphHgg;
  if (name == "hgg") return TrainMode::kHgg;
  if (name == "her") return TrainMode::kHer;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown mode '" + name + "' (expected g-hgg, hgg or her)");
}

void TrainConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::kConfig, "trainer: " + what);
  };
  if (iterations < 0) fail("iterations must be >= 0");
  if (optimization_steps < 0) fail("optimization_steps must be >= 0");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (eval_episodes < 1) fail("eval_episodes must be >= 1");
  if (buffer_capacity < 1) fail("buffer_capacity must be >= 1");
  if (k_future < 0) fail("k_future must be >= 0");
}

Trajectory Rollout(const Environment& env, Learner& learner,
                   const TaskPair& task, bool explore, bool full_horizon) {
  EnvState s = task.s0;
  s.step_count = 0;
  std::vector<EnvState> states{s};
  std::vector<Action> actions;
  const int horizon = env.config().horizon;
  bool done = full_horizon ? horizon == 0
                           : env.IsSuccess(AchievedGoal(s), task.goal);
  while (!done) {
    const Action a = learner.Act(s, task.goal, explore);
    const StepResult step = env.Step(s, a, task.goal, full_horizon);
    actions.push_back(a);
    states.push_back(step.state);
    s = step.state;
    done = full_horizon ? s.step_count >= horizon : step.done;
  }
  return Trajectory::FromRollout(std::move(states), std::move(actions),
                                 task.goal);
}

double Evaluate(Learner& learner, const Environment& env, int episodes,
                Rng& rng) {
  if (episodes < 1) {
    throw Error(ErrorKind::kInvalidArgument, "evaluation needs >= 1 episode");
  }
  int successes = 0;
  for (int e = 0; e < episodes; ++e) {
    const auto [s0, goal] = env.Reset(rng);
    const Trajectory traj = Rollout(env, learner, {s0, goal}, false);
    if (env.IsSuccess(traj.achieved.back(), goal)) ++successes;
  }
  return static_cast<double>(successes) / episodes;
}

Trainer::Trainer(Environment env, const TrainConfig& config,
                 const HggParams& hgg, std::unique_ptr<Learner> learner,
                 std::shared_ptr<const GraphMetric> graph)
    : env_(std::move(env)),
      config_(config),
      hgg_(hgg),
      learner_(std::move(learner)),
      graph_(std::move(graph)),
      buffer_(static_cast<size_t>(config.buffer_capacity), config.k_future,
              SparseReward{env_.config().success_threshold}),
      task_rng_(MakeRng(config.seed, kTaskStream)),
      goal_rng_(MakeRng(config.seed, kGoalStream)),
      replay_rng_(MakeRng(config.seed, kReplayStream)) {
  config_.Validate();
  hgg_.Validate();
  if (!learner_) throw Error(ErrorKind::kInvalidArgument, "learner is null");
  if (config_.mode == TrainMode::kGraphHgg && !graph_) {
    throw Error(ErrorKind::kInvalidArgument,
                "g-hgg mode needs a goal graph and distance table");
  }
}

IterationMetrics Trainer::RunIteration() {
  const auto start = std::chrono::steady_clock::now();
  IterationMetrics metrics;
  metrics.iteration = iteration_ + 1;
  metrics.mean_graph_distance = kNaN;
  metrics.mean_euclidean_distance = kNaN;
  metrics.close_fraction = kNaN;

  last_targets_.clear();
  for (int i = 0; i < hgg_.num_targets; ++i) {
    auto [s0, goal] = env_.Reset(task_rng_);
    last_targets_.push_back({s0, goal});
  }

  // Goal generation happens before anything is mutated, so a failure here
  // leaves the trainer at the end of the previous iteration.
  bool use_targets = config_.mode == TrainMode::kHer || stopped_ ||
                     buffer_.size() < static_cast<size_t>(hgg_.num_targets);
  std::vector<TaskPair> tasks;
  if (!use_targets) {
    const auto pool = buffer_.Recent(static_cast<size_t>(hgg_.pool_size));
    const GoalMetric& metric = config_.mode == TrainMode::kGraphHgg
                                   ? static_cast<const GoalMetric&>(*graph_)
                                   : euclidean_;
    const GoalSelection selection =
        SelectTrajectories(last_targets_, pool, *learner_, hgg_, metric);
    if (observer_) observer_(metrics.iteration, selection);

    double sum_euclid = 0.0;
    double sum_graph = 0.0;
    for (const MatchedPair& m : selection.matched) {
      sum_euclid += (m.hindsight_goal - m.target.goal).norm();
      if (graph_) sum_graph += graph_->Distance(m.hindsight_goal, m.target.goal);
    }
    const double n = static_cast<double>(selection.matched.size());
    metrics.mean_euclidean_distance = sum_euclid / n;
    if (graph_) metrics.mean_graph_distance = sum_graph / n;
    metrics.close_fraction = CloseFraction(selection, hgg_);

    if (StopCondition(selection, hgg_)) {
      stopped_ = true;
      use_targets = true;
    } else {
      tasks = IntermediateTasks(selection, hgg_.num_episodes, goal_rng_);
    }
  }
  if (use_targets) {
    for (int i = 0; i < hgg_.num_episodes; ++i) {
      auto [s0, goal] = env_.Reset(task_rng_);
      tasks.push_back({s0, goal});
    }
  }
  ++iteration_;
  metrics.explored_targets = use_targets;
  metrics.stopped = stopped_;

  for (const TaskPair& task : tasks) {
    buffer_.Insert(
        Rollout(env_, *learner_, task, true, config_.full_horizon_exploration),
        replay_rng_);
  }
  last_tasks_ = std::move(tasks);

  if (buffer_.num_transitions() > 0) {
    for (int step = 0; step < config_.optimization_steps; ++step) {
      const auto batch = buffer_.SampleMinibatch(
          static_cast<size_t>(config_.batch_size), replay_rng_);
      learner_->Update(batch);
    }
  }

  Rng eval_rng = MakeRng(config_.seed, kEvalStreamBase + iteration_);
  metrics.success_rate =
      Evaluate(*learner_, env_, config_.eval_episodes, eval_rng);
  metrics.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return metrics;
}

void Trainer::SaveCheckpoint(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  const std::filesystem::path root(dir);
  {
    std::ofstream out(root / "learner.bin", std::ios::binary | std::ios::trunc);
    learner_->Save(out);
    if (!out) throw Error(ErrorKind::kIo, "cannot write learner checkpoint");
  }
  {
    std::ofstream out(root / "buffer.bin", std::ios::binary | std::ios::trunc);
    buffer_.Save(out, replay_rng_);
    if (!out) throw Error(ErrorKind::kIo, "cannot write buffer checkpoint");
  }
  nlohmann::json state = {
      {"version", 1},
      {"iteration", iteration_},
      {"stopped", stopped_},
      {"mode", TrainModeName(config_.mode)},
      {"seed", config_.seed},
      {"task_rng", SerializeRng(task_rng_)},
      {"goal_rng", SerializeRng(goal_rng_)},
  };
  std::ofstream out(root / "trainer.json", std::ios::trunc);
  out << state.dump(2) << "\n";
  if (!out) throw Error(ErrorKind::kIo, "cannot write trainer checkpoint");
}

void Trainer::LoadCheckpoint(const std::string& dir) {
  const std::filesystem::path root(dir);
  std::ifstream state_in(root / "trainer.json");
  if (!state_in) throw Error(ErrorKind::kIo, "missing trainer.json in " + dir);
  nlohmann::json state;
  try {
    state_in >> state;
    iteration_ = state.at("iteration").get<int>();
    stopped_ = state.at("stopped").get<bool>();
    task_rng_ = DeserializeRng(state.at("task_rng").get<std::string>());
    goal_rng_ = DeserializeRng(state.at("goal_rng").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("corrupt trainer.json: ") + e.what());
  }
  std::ifstream learner_in(root / "learner.bin", std::ios::binary);
  if (!learner_in) throw Error(ErrorKind::kIo, "missing learner.bin in " + dir);
  learner_->Load(learner_in);
  std::ifstream buffer_in(root / "buffer.bin", std::ios::binary);
  if (!buffer_in) throw Error(ErrorKind::kIo, "missing buffer.bin in " + dir);
  replay_rng_ = buffer_.Load(buffer_in);
}

}  // namespace hatlas
