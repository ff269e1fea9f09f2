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

#ifndef HATLAS_LEARNER_H_
#define HATLAS_LEARNER_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "hatlas/env.h"
#include "hatlas/random.h"
#include "hatlas/replay.h"

namespace hatlas {

struct UpdateStats {
  double mean_abs_td_error = 0.0;
  size_t transitions = 0;
};

// Goal-conditioned off-policy learner. Value() must be safe to call
// concurrently; Act() and Update() need exclusive access.
class Learner {
 public:
  virtual ~Learner() = default;

  // Policy action for state `s` and goal `g`; with `explore`, exploration
  // noise is added.
  virtual Action Act(const EnvState& s, const Vec3& g, bool explore) = 0;
  // Estimated value V(s || g) of pursuing `g` from `s`.
  virtual double Value(const EnvState& s, const Vec3& g) const = 0;
  // One optimization step on a minibatch.
  virtual UpdateStats Update(std::span<const Transition> batch) = 0;

  virtual void Save(std::ostream& out) const = 0;
  virtual void Load(std::istream& in) = 0;
};

// Discrete action set of the reference learner.
enum class DiscreteAction : int {
  kPlusX = 0,
  kMinusX,
  kPlusY,
  kMinusY,
  kPlusZ,
  kMinusZ,
  kGripToggle,
  kNoop,
};
inline constexpr int kNumDiscreteActions = 8;

Action ToAction(DiscreteAction a);
// Inverse of ToAction, tolerant to exploration jitter on the move vector.
DiscreteAction ClassifyAction(const Action& a);

struct QLearnerConfig {
  // Region discretized into cubic cells.
  Bounds3 grid{0, 1, 0, 1, 0, 1};
  double resolution = 0.05;
  double gamma = 0.98;
  double learning_rate = 0.1;
  double epsilon = 0.2;
  // Uniform jitter added to each move component while exploring, in
  // normalized action units (0.1 = a tenth of the step length).
  double jitter = 0.1;
  // Vertical moves removed from the action set.
  bool planar = false;
  bool grip_enabled = true;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Tabular goal-conditioned Q-learning over discretized (agent, object,
// holding) states and goal cells. Unvisited entries read as 0.
class DiscretizedQLearner final : public Learner {
 public:
  explicit DiscretizedQLearner(const QLearnerConfig& config);

  Action Act(const EnvState& s, const Vec3& g, bool explore) override;
  double Value(const EnvState& s, const Vec3& g) const override;
  UpdateStats Update(std::span<const Transition> batch) override;

  void Save(std::ostream& out) const override;
  void Load(std::istream& in) override;

  // Greedy discrete action, lowest index among equal values.
  DiscreteAction Greedy(const EnvState& s, const Vec3& g) const;
  double Q(const EnvState& s, const Vec3& g, DiscreteAction a) const;
  void SetQ(const EnvState& s, const Vec3& g, DiscreteAction a, double value);

  std::span<const DiscreteAction> actions() const { return actions_; }
  const QLearnerConfig& config() const { return config_; }
  size_t table_size() const { return table_.size(); }

  std::uint64_t CellOf(const Vec3& p) const;

 private:
  using Row = std::array<double, kNumDiscreteActions>;

  std::uint64_t Key(const EnvState& s, const Vec3& g) const;
  double MaxQ(const Row* row) const;
  const Row* Find(std::uint64_t key) const;

  QLearnerConfig config_;
  std::array<int, 3> cells_per_axis_{};
  std::uint64_t num_cells_ = 0;
  std::vector<DiscreteAction> actions_;
  std::unordered_map<std::uint64_t, Row> table_;
  Rng rng_;
};

}  // namespace hatlas

#endif  // HATLAS_LEARNER_H_
