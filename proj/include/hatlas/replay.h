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

#ifndef HATLAS_REPLAY_H_
#define HATLAS_REPLAY_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <vector>

#include "hatlas/env.h"
#include "hatlas/random.h"

namespace hatlas {

// Sparse goal-reaching reward: 0 when the achieved goal is within
// `threshold` of the goal, -1 otherwise.
struct SparseReward {
  double threshold = 0.05;

  double operator()(const Vec3& achieved, const Vec3& goal) const {
    return (achieved - goal).norm() <= threshold ? 0.0 : -1.0;
  }
};

struct Transition {
  EnvState state;
  Vec3 goal = Vec3::Zero();
  Action action;
  double reward = -1.0;
  EnvState next;
  // Goal reached at `next`. Horizon truncation is not terminal.
  bool done = false;
};

struct Trajectory {
  std::uint64_t id = 0;
  std::vector<EnvState> states;  // T + 1 states
  std::vector<Action> actions;   // T actions
  Vec3 goal = Vec3::Zero();
  std::vector<Vec3> achieved;    // m(states[t])

  static Trajectory FromRollout(std::vector<EnvState> states,
                                std::vector<Action> actions, const Vec3& goal);

  int length() const { return static_cast<int>(actions.size()); }

  // Original transition t under the episode goal.
  Transition At(int t, const SparseReward& reward) const;
  // Transition t relabeled with the achieved goal at timestep goal_t.
  Transition Relabeled(int t, int goal_t, const SparseReward& reward) const;
};

// Future timesteps t' drawn uniformly from (t, T], k_future of them.
std::vector<int> SampleFutureTimesteps(int t, int length, int k_future,
                                       Rng& rng);

// "future" hindsight relabeling of transition t: k_future copies whose goal
// is the achieved goal at a uniformly drawn later timestep, with the reward
// recomputed for that goal. Throws Error(kInvalidArgument) unless
// 0 <= t < T.
std::vector<Transition> HerRelabel(const Trajectory& traj, int t,
                                   int k_future, Rng& rng,
                                   const SparseReward& reward);

// FIFO ring of trajectories with a flat transition view (originals plus their
// hindsight copies) for minibatch sampling.
class ReplayBuffer {
 public:
  // Per-transition sampling weight; uniform sampling when unset.
  using WeightFn = std::function<double(const Transition&)>;

  ReplayBuffer(size_t capacity, int k_future, SparseReward reward);

  size_t capacity() const { return capacity_; }
  size_t size() const { return slots_.size(); }
  bool empty() const { return slots_.empty(); }
  size_t num_transitions() const { return num_transitions_; }
  std::uint64_t total_inserted() const { return next_id_; }
  int k_future() const { return k_future_; }
  const SparseReward& reward() const { return reward_; }

  // Stores the trajectory (assigning its id) together with k_future
  // hindsight goals per step drawn from `rng`; evicts the oldest trajectory
  // when full. Returns the id.
  std::uint64_t Insert(Trajectory traj, Rng& rng);

  // Oldest-first access.
  const Trajectory& trajectory(size_t i) const { return slots_[i].traj; }
  // The most recent min(n, size()) trajectories, oldest first.
  std::vector<const Trajectory*> Recent(size_t n) const;

  // Draws `batch` transitions with replacement. Throws Error(kEmptyBuffer)
  // when no transition is stored.
  std::vector<Transition> SampleMinibatch(size_t batch, Rng& rng) const;

  // Prioritization hook; pass an empty function to restore uniform sampling.
  void SetWeightFn(WeightFn fn) { weight_fn_ = std::move(fn); }

  // Transition with flat index i, 0 <= i < num_transitions().
  Transition TransitionAt(size_t i) const;

  void Save(std::ostream& out, const Rng& rng) const;
  // Restores the buffer and returns the RNG stored with it.
  Rng Load(std::istream& in);

 private:
  struct Entry {
    std::int32_t t;
    std::int32_t goal_t;  // -1 for the original goal
  };
  struct Slot {
    Trajectory traj;
    std::vector<Entry> entries;
  };

  void RebuildIndex();
  Transition Materialize(const Slot& slot, const Entry& e) const;

  size_t capacity_;
  int k_future_;
  SparseReward reward_;
  std::deque<Slot> slots_;
  std::vector<size_t> cumulative_;  // prefix sums of entries per slot
  size_t num_transitions_ = 0;
  std::uint64_t next_id_ = 0;
  WeightFn weight_fn_;
};

}  // namespace hatlas

#endif  // HATLAS_REPLAY_H_
