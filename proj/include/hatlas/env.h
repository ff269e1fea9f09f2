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

#ifndef HATLAS_ENV_H_
#define HATLAS_ENV_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hatlas/geometry.h"
#include "hatlas/random.h"

namespace hatlas {

struct EnvState {
  Vec3 agent_pos = Vec3::Zero();
  Vec3 object_pos = Vec3::Zero();
  bool holding = false;
  int step_count = 0;

  friend bool operator==(const EnvState&, const EnvState&) = default;
};

// Normalized command: displacement in [-1, 1]^3 (scaled by the environment's
// action scale) and a grip command in [-1, 1]. grip > 0 toggles holding.
struct Action {
  Vec3 move = Vec3::Zero();
  double grip = 0.0;

  Action Clamped() const;
  friend bool operator==(const Action&, const Action&) = default;
};

// The state abstraction m(s): the object position.
inline Vec3 AchievedGoal(const EnvState& s) { return s.object_pos; }

enum class TaskKind {
  // Closed gripper in contact with the object: object and agent move as one
  // body and the grip command is ignored.
  kPush,
  // The object only moves while held.
  kPick,
};

// Target goal distribution: uniform over a box, or uniform over a finite set.
struct GoalDistribution {
  std::optional<Bounds3> region;
  std::vector<Vec3> points;

  Vec3 Sample(Rng& rng) const;
};

struct EnvConfig {
  std::string name = "custom";
  TaskKind kind = TaskKind::kPush;
  Bounds3 workspace{0, 1, 0, 1, 0, 1};
  std::vector<Cuboid> obstacles;
  // Bounds of the goal space handed to the graph (may be smaller than the
  // workspace).
  Bounds3 graph_bounds{0, 1, 0, 1, 0, 1};
  Bounds3 initial_object_region{0, 1, 0, 1, 0, 1};
  Vec3 agent_offset = Vec3::Zero();
  GoalDistribution targets;
  double success_threshold = 0.05;
  int horizon = 100;
  double action_scale = 0.03;
  double grab_radius = 0.05;
  // Vertical motion disabled (table-top pushing).
  bool planar = false;
  // On release the object keeps the releasing step's displacement once.
  bool release_carry = false;

  // Throws Error(kConfig) on inconsistent settings.
  void Validate() const;
  // Graph bounds minus the obstacles that touch them.
  AccessibleSpace GraphSpace() const;
};

struct StepResult {
  EnvState state;
  double reward = -1.0;
  bool done = false;
  bool success = false;
};

// Kinematic point-mass simulator. Deterministic: the only randomness is in
// Reset() and comes from the caller's generator.
class Environment {
 public:
  explicit Environment(EnvConfig config);

  const EnvConfig& config() const { return config_; }

  // Initial state from the start distribution and a target goal.
  std::pair<EnvState, Vec3> Reset(Rng& rng) const;
  EnvState SampleInitialState(Rng& rng) const;

  // Throws Error(kEpisodeOver) once the horizon is reached or, unless
  // `past_success` is set, when the goal is already achieved.
  StepResult Step(const EnvState& state, const Action& action,
                  const Vec3& goal, bool past_success = false) const;

  bool IsSuccess(const Vec3& achieved, const Vec3& goal) const {
    return (achieved - goal).norm() <= config_.success_threshold;
  }
  // Sparse reward: 0 on success, -1 otherwise.
  double Reward(const Vec3& achieved, const Vec3& goal) const {
    return IsSuccess(achieved, goal) ? 0.0 : -1.0;
  }

  // Point reached when moving from `from` by `delta`: clamped to the
  // workspace and stopped just short of the first obstacle on the way.
  Vec3 MoveBlocked(const Vec3& from, const Vec3& delta) const;

  bool Free(const Vec3& p) const;

 private:
  EnvConfig config_;
};

}  // namespace hatlas

#endif  // HATLAS_ENV_H_
