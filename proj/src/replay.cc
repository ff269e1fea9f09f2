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

#include "hatlas/replay.h"

#include <algorithm>
#include <istream>
#include <ostream>

#include "hatlas/binary_io.h"
#include "hatlas/error.h"

namespace hatlas {
namespace {

constexpr char kBufferMagic[] = "HATLAS-BUFFER";
constexpr std::uint32_t kBufferVersion = 1;

void PutState(BinaryWriter& w, const EnvState& s) {
  w.PutVec3(s.agent_pos);
  w.PutVec3(s.object_pos);
  w.Put<std::uint8_t>(s.holding ? 1 : 0);
  w.Put<std::int32_t>(s.step_count);
}

EnvState GetState(BinaryReader& r) {
  EnvState s;
  s.agent_pos = r.GetVec3();
  s.object_pos = r.GetVec3();
  s.holding = r.Get<std::uint8_t>() != 0;
  s.step_count = r.Get<std::int32_t>();
  return s;
}

}  // namespace

Trajectory Trajectory::FromRollout(std::vector<EnvState> states,
                                   std::vector<Action> actions,
                                   const Vec3& goal) {
  if (states.size() != actions.size() + 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "trajectory needs exactly one more state than actions");
  }
  Trajectory traj;
  traj.states = std::move(states);
  traj.actions = std::move(actions);
  traj.goal = goal;
  traj.achieved.reserve(traj.states.size());
  for (const EnvState& s : traj.states) traj.achieved.push_back(AchievedGoal(s));
  return traj;
}

Transition Trajectory::At(int t, const SparseReward& reward) const {
  Transition tr;
  tr.state = states[t];
  tr.goal = goal;
  tr.action = actions[t];
  tr.next = states[t + 1];
  tr.reward = reward(achieved[t + 1], goal);
  tr.done = tr.reward == 0.0;
  return tr;
}

Transition Trajectory::Relabeled(int t, int goal_t,
                                 const SparseReward& reward) const {
  Transition tr;
  tr.state = states[t];
  tr.goal = achieved[goal_t];
  tr.action = actions[t];
  tr.next = states[t + 1];
  tr.reward = reward(achieved[t + 1], tr.goal);
  tr.done = tr.reward == 0.0;
  return tr;
}

std::vector<int> SampleFutureTimesteps(int t, int length, int k_future,
                                       Rng& rng) {
  if (t < 0 || t >= length) {
    throw Error(ErrorKind::kInvalidArgument,
                "relabel timestep out of range");
  }
  std::vector<int> out;
  out.reserve(std::max(k_future, 0));
  std::uniform_int_distribution<int> future(t + 1, length);
  for (int i = 0; i < k_future; ++i) out.push_back(future(rng));
  return out;
}

std::vector<Transition> HerRelabel(const Trajectory& traj, int t,
                                   int k_future, Rng& rng,
                                   const SparseReward& reward) {
  std::vector<Transition> out;
  for (int goal_t : SampleFutureTimesteps(t, traj.length(), k_future, rng)) {
    out.push_back(traj.Relabeled(t, goal_t, reward));
  }
  return out;
}

ReplayBuffer::ReplayBuffer(size_t capacity, int k_future, SparseReward reward)
    : capacity_(capacity), k_future_(k_future), reward_(reward) {
  if (capacity_ == 0) {
    throw Error(ErrorKind::kInvalidArgument, "buffer capacity must be > 0");
  }
  if (k_future_ < 0) {
    throw Error(ErrorKind::kInvalidArgument, "k_future must be >= 0");
  }
}

std::uint64_t ReplayBuffer::Insert(Trajectory traj, Rng& rng) {
  Slot slot;
  slot.traj = std::move(traj);
  slot.traj.id = next_id_++;
  const int length = slot.traj.length();
  slot.entries.reserve(static_cast<size_t>(length) * (1 + k_future_));
  for (int t = 0; t < length; ++t) {
    slot.entries.push_back({t, -1});
    for (int goal_t : SampleFutureTimesteps(t, length, k_future_, rng)) {
      slot.entries.push_back({t, goal_t});
    }
  }
  if (slots_.size() == capacity_) slots_.pop_front();
  slots_.push_back(std::move(slot));
  RebuildIndex();
  return slots_.back().traj.id;
}

void ReplayBuffer::RebuildIndex() {
  cumulative_.resize(slots_.size());
  size_t total = 0;
  for (size_t i = 0; i < slots_.size(); ++i) {
    total += slots_[i].entries.size();
    cumulative_[i] = total;
  }
  num_transitions_ = total;
}

std::vector<const Trajectory*> ReplayBuffer::Recent(size_t n) const {
  const size_t count = std::min(n, slots_.size());
  std::vector<const Trajectory*> out;
  out.reserve(count);
  for (size_t i = slots_.size() - count; i < slots_.size(); ++i) {
    out.push_back(&slots_[i].traj);
  }
  return out;
}

Transition ReplayBuffer::Materialize(const Slot& slot, const Entry& e) const {
  return e.goal_t < 0 ? slot.traj.At(e.t, reward_)
                      : slot.traj.Relabeled(e.t, e.goal_t, reward_);
}

Transition ReplayBuffer::TransitionAt(size_t i) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), i);
  const size_t slot = static_cast<size_t>(it - cumulative_.begin());
  const size_t before = slot == 0 ? 0 : cumulative_[slot - 1];
  return Materialize(slots_[slot], slots_[slot].entries[i - before]);
}

std::vector<Transition> ReplayBuffer::SampleMinibatch(size_t batch,
                                                      Rng& rng) const {
  if (num_transitions_ == 0) {
    throw Error(ErrorKind::kEmptyBuffer, "replay buffer holds no transitions");
  }
  std::vector<Transition> out;
  out.reserve(batch);
  if (weight_fn_) {
    std::vector<double> weights;
    weights.reserve(num_transitions_);
    for (size_t i = 0; i < num_transitions_; ++i) {
      weights.push_back(weight_fn_(TransitionAt(i)));
    }
    std::discrete_distribution<size_t> pick(weights.begin(), weights.end());
    for (size_t b = 0; b < batch; ++b) out.push_back(TransitionAt(pick(rng)));
    return out;
  }
  std::uniform_int_distribution<size_t> pick(0, num_transitions_ - 1);
  for (size_t b = 0; b < batch; ++b) out.push_back(TransitionAt(pick(rng)));
  return out;
}

void ReplayBuffer::Save(std::ostream& out, const Rng& rng) const {
  BinaryWriter w(out);
  w.PutHeader(kBufferMagic, kBufferVersion);
  w.Put<std::uint64_t>(capacity_);
  w.Put<std::int32_t>(k_future_);
  w.Put(reward_.threshold);
  w.Put(next_id_);
  w.PutString(SerializeRng(rng));
  w.Put<std::uint64_t>(slots_.size());
  for (const Slot& slot : slots_) {
    const Trajectory& tr = slot.traj;
    w.Put(tr.id);
    w.PutVec3(tr.goal);
    w.Put<std::uint64_t>(tr.states.size());
    for (const EnvState& s : tr.states) PutState(w, s);
    for (const Action& a : tr.actions) {
      w.PutVec3(a.move);
      w.Put(a.grip);
    }
    w.PutSpan<Entry>(slot.entries);
  }
}

Rng ReplayBuffer::Load(std::istream& in) {
  BinaryReader r(in);
  const auto version = r.GetHeader(kBufferMagic);
  if (version != kBufferVersion) {
    throw Error(ErrorKind::kIo,
                "unsupported buffer file version " + std::to_string(version));
  }
  capacity_ = r.Get<std::uint64_t>();
  k_future_ = r.Get<std::int32_t>();
  reward_.threshold = r.Get<double>();
  next_id_ = r.Get<std::uint64_t>();
  Rng rng = DeserializeRng(r.GetString());
  const auto n = r.Get<std::uint64_t>();
  if (n > capacity_ || capacity_ == 0) {
    throw Error(ErrorKind::kIo, "corrupt buffer file");
  }
  slots_.clear();
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto id = r.Get<std::uint64_t>();
    const Vec3 goal = r.GetVec3();
    const auto num_states = r.Get<std::uint64_t>();
    if (num_states == 0 || num_states > (1u << 24)) {
      throw Error(ErrorKind::kIo, "corrupt buffer file");
    }
    std::vector<EnvState> states;
    for (std::uint64_t s = 0; s < num_states; ++s) states.push_back(GetState(r));
    std::vector<Action> actions;
    for (std::uint64_t a = 0; a + 1 < num_states; ++a) {
      Action act;
      act.move = r.GetVec3();
      act.grip = r.Get<double>();
      actions.push_back(act);
    }
    Slot slot;
    slot.traj = Trajectory::FromRollout(std::move(states), std::move(actions),
                                        goal);
    slot.traj.id = id;
    slot.entries = r.GetVector<Entry>();
    for (const Entry& e : slot.entries) {
      if (e.t < 0 || e.t >= slot.traj.length() || e.goal_t > slot.traj.length() ||
          (e.goal_t >= 0 && e.goal_t <= e.t)) {
        throw Error(ErrorKind::kIo, "corrupt buffer file: bad entry");
      }
    }
    slots_.push_back(std::move(slot));
  }
  RebuildIndex();
  return rng;
}

}  // namespace hatlas
