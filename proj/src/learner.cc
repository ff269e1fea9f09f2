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

#include "hatlas/learner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <istream>
#include <ostream>

#include "hatlas/binary_io.h"
#include "hatlas/error.h"

namespace hatlas {
namespace {

constexpr char kLearnerMagic[] = "HATLAS-QTABLE";
constexpr std::uint32_t kLearnerVersion = 1;

}  // namespace

Action ToAction(DiscreteAction a) {
  Action out;
  switch (a) {
    case DiscreteAction::kPlusX: out.move = Vec3(1, 0, 0); break;
    case DiscreteAction::kMinusX: out.move = Vec3(-1, 0, 0); break;
    case DiscreteAction::kPlusY: out.move = Vec3(0, 1, 0); break;
    case DiscreteAction::kMinusY: out.move = Vec3(0, -1, 0); break;
    case DiscreteAction::kPlusZ: out.move = Vec3(0, 0, 1); break;
    case DiscreteAction::kMinusZ: out.move = Vec3(0, 0, -1); break;
    case DiscreteAction::kGripToggle: out.grip = 1.0; break;
    case DiscreteAction::kNoop: break;
  }
  return out;
}

DiscreteAction ClassifyAction(const Action& a) {
  if (a.grip > 0.0) return DiscreteAction::kGripToggle;
  int axis = 0;
  a.move.cwiseAbs().maxCoeff(&axis);
  const double v = a.move[axis];
  if (std::abs(v) < 0.5) return DiscreteAction::kNoop;
  return static_cast<DiscreteAction>(2 * axis + (v > 0 ? 0 : 1));
}

void QLearnerConfig::Validate() const {
  auto fail = [](const char* what) {
    throw Error(ErrorKind::kConfig, std::string("learner: ") + what);
  };
  if (!(resolution > 0.0)) fail("resolution must be > 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("gamma must be in (0, 1]");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    fail("learning rate must be in (0, 1]");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon must be in [0, 1]");
  if (!(jitter >= 0.0)) fail("jitter must be >= 0");
}

DiscretizedQLearner::DiscretizedQLearner(const QLearnerConfig& config)
    : config_(config), rng_(MakeRng(config.seed, 0x1ea2)) {
  config_.Validate();
  const Vec3 extent = config_.grid.Extent();
  num_cells_ = 1;
  for (int a = 0; a < 3; ++a) {
    cells_per_axis_[a] =
        std::max(1, static_cast<int>(std::ceil(extent[a] / config_.resolution -
                                               1e-9)));
    num_cells_ *= static_cast<std::uint64_t>(cells_per_axis_[a]);
  }
  // Key = ((agent * cells + object) * 2 + holding) * cells + goal.
  if (num_cells_ > (1u << 20)) {
    throw Error(ErrorKind::kConfig,
                "learner: grid too fine for the tabular key space");
  }
  for (int i = 0; i < kNumDiscreteActions; ++i) {
    const auto a = static_cast<DiscreteAction>(i);
    if (config_.planar &&
        (a == DiscreteAction::kPlusZ || a == DiscreteAction::kMinusZ)) {
      continue;
    }
    if (!config_.grip_enabled && a == DiscreteAction::kGripToggle) continue;
    actions_.push_back(a);
  }
}

std::uint64_t DiscretizedQLearner::CellOf(const Vec3& p) const {
  std::uint64_t id = 0;
  for (int a = 0; a < 3; ++a) {
    const double rel = (p[a] - config_.grid.lo()[a]) / config_.resolution;
    const int c = std::clamp(static_cast<int>(std::floor(rel)), 0,
                             cells_per_axis_[a] - 1);
    id = id * static_cast<std::uint64_t>(cells_per_axis_[a]) +
         static_cast<std::uint64_t>(c);
  }
  return id;
}

std::uint64_t DiscretizedQLearner::Key(const EnvState& s, const Vec3& g) const {
  const std::uint64_t agent = CellOf(s.agent_pos);
  const std::uint64_t object = CellOf(s.object_pos);
  return ((agent * num_cells_ + object) * 2 + (s.holding ? 1 : 0)) *
             num_cells_ +
         CellOf(g);
}

const DiscretizedQLearner::Row* DiscretizedQLearner::Find(
    std::uint64_t key) const {
  const auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

double DiscretizedQLearner::MaxQ(const Row* row) const {
  if (row == nullptr) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (DiscreteAction a : actions_) {
    best = std::max(best, (*row)[static_cast<int>(a)]);
  }
  return best;
}

DiscreteAction DiscretizedQLearner::Greedy(const EnvState& s,
                                           const Vec3& g) const {
  const Row* row = Find(Key(s, g));
  if (row == nullptr) return actions_.front();
  DiscreteAction best = actions_.front();
  double best_q = (*row)[static_cast<int>(best)];
  for (DiscreteAction a : actions_) {
    const double q = (*row)[static_cast<int>(a)];
    if (q > best_q) {
      best_q = q;
      best = a;
    }
  }
  return best;
}

Action DiscretizedQLearner::Act(const EnvState& s, const Vec3& g,
                                bool explore) {
  if (!explore) return ToAction(Greedy(s, g));
  DiscreteAction choice;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng_) < config_.epsilon) {
    std::uniform_int_distribution<size_t> pick(0, actions_.size() - 1);
    choice = actions_[pick(rng_)];
  } else {
    choice = Greedy(s, g);
  }
  Action out = ToAction(choice);
  if (config_.jitter > 0.0) {
    std::uniform_real_distribution<double> noise(-config_.jitter,
                                                 config_.jitter);
    for (int a = 0; a < 3; ++a) out.move[a] += noise(rng_);
    if (config_.planar) out.move.z() = 0.0;
  }
  return out.Clamped();
}

double DiscretizedQLearner::Value(const EnvState& s, const Vec3& g) const {
  return MaxQ(Find(Key(s, g)));
}

double DiscretizedQLearner::Q(const EnvState& s, const Vec3& g,
                              DiscreteAction a) const {
  const Row* row = Find(Key(s, g));
  return row == nullptr ? 0.0 : (*row)[static_cast<int>(a)];
}

void DiscretizedQLearner::SetQ(const EnvState& s, const Vec3& g,
                               DiscreteAction a, double value) {
  auto [it, inserted] = table_.try_emplace(Key(s, g));
  if (inserted) it->second.fill(0.0);
  it->second[static_cast<int>(a)] = value;
}

UpdateStats DiscretizedQLearner::Update(std::span<const Transition> batch) {
  UpdateStats stats;
  if (batch.empty()) return stats;
  double total = 0.0;
  for (const Transition& tr : batch) {
    const double bootstrap =
        tr.done ? 0.0 : config_.gamma * MaxQ(Find(Key(tr.next, tr.goal)));
    const double target = tr.reward + bootstrap;
    auto [it, inserted] = table_.try_emplace(Key(tr.state, tr.goal));
    if (inserted) it->second.fill(0.0);
    double& q = it->second[static_cast<int>(ClassifyAction(tr.action))];
    const double td = target - q;
    q += config_.learning_rate * td;
    total += std::abs(td);
  }
  stats.transitions = batch.size();
  stats.mean_abs_td_error = total / static_cast<double>(batch.size());
  return stats;
}

void DiscretizedQLearner::Save(std::ostream& out) const {
  BinaryWriter w(out);
  w.PutHeader(kLearnerMagic, kLearnerVersion);
  w.PutVec3(config_.grid.lo());
  w.PutVec3(config_.grid.hi());
  w.Put(config_.resolution);
  w.Put(config_.gamma);
  w.Put(config_.learning_rate);
  w.Put(config_.epsilon);
  w.Put(config_.jitter);
  w.Put<std::uint8_t>(config_.planar);
  w.Put<std::uint8_t>(config_.grip_enabled);
  w.Put(config_.seed);
  w.PutString(SerializeRng(rng_));
  std::vector<std::uint64_t> keys;
  keys.reserve(table_.size());
  for (const auto& [key, row] : table_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  w.Put<std::uint64_t>(keys.size());
  for (std::uint64_t key : keys) {
    w.Put(key);
    w.Put(table_.at(key));
  }
}

void DiscretizedQLearner::Load(std::istream& in) {
  BinaryReader r(in);
  const auto version = r.GetHeader(kLearnerMagic);
  if (version != kLearnerVersion) {
    throw Error(ErrorKind::kIo,
                "unsupported learner file version " + std::to_string(version));
  }
  QLearnerConfig c;
  const Vec3 lo = r.GetVec3();
  const Vec3 hi = r.GetVec3();
  c.grid = Bounds3::FromCorners(lo, hi);
  c.resolution = r.Get<double>();
  c.gamma = r.Get<double>();
  c.learning_rate = r.Get<double>();
  c.epsilon = r.Get<double>();
  c.jitter = r.Get<double>();
  c.planar = r.Get<std::uint8_t>() != 0;
  c.grip_enabled = r.Get<std::uint8_t>() != 0;
  c.seed = r.Get<std::uint64_t>();
  Rng rng = DeserializeRng(r.GetString());
  DiscretizedQLearner loaded(c);
  loaded.rng_ = rng;
  const auto n = r.Get<std::uint64_t>();
  loaded.table_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto key = r.Get<std::uint64_t>();
    loaded.table_[key] = r.Get<Row>();
  }
  *this = std::move(loaded);
}

}  // namespace hatlas
