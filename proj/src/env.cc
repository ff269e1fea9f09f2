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

#include "hatlas/env.h"

#include <algorithm>
#include <cmath>

#include "hatlas/error.h"

namespace hatlas {
namespace {

// Objects stop this far short of an obstacle face so they never lie on it.
constexpr double kContactMargin = 1e-6;
constexpr int kMaxRejections = 10000;

Vec3 UniformIn(const Bounds3& box, Rng& rng) {
  Vec3 p;
  for (int a = 0; a < 3; ++a) {
    std::uniform_real_distribution<double> u(box.lo()[a], box.hi()[a]);
    p[a] = u(rng);
  }
  return p;
}

bool BoxInside(const Bounds3& inner, const Bounds3& outer) {
  return outer.Contains(inner.lo()) && outer.Contains(inner.hi());
}

}  // namespace

Action Action::Clamped() const {
  Action a;
  a.move = move.cwiseMax(-1.0).cwiseMin(1.0);
  a.grip = std::clamp(grip, -1.0, 1.0);
  return a;
}

Vec3 GoalDistribution::Sample(Rng& rng) const {
  if (!points.empty()) {
    std::uniform_int_distribution<size_t> pick(0, points.size() - 1);
    return points[pick(rng)];
  }
  if (!region) throw Error(ErrorKind::kConfig, "empty target distribution");
  return UniformIn(*region, rng);
}

void EnvConfig::Validate() const {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::kConfig, "env '" + name + "': " + what);
  };
  if (horizon < 1) fail("horizon must be >= 1");
  if (!(success_threshold > 0.0)) fail("success threshold must be > 0");
  if (!(action_scale > 0.0)) fail("action scale must be > 0");
  if (!(grab_radius >= 0.0)) fail("grab radius must be >= 0");
  if (!targets.region && targets.points.empty()) {
    fail("target goal distribution is empty");
  }
  if (targets.region && !BoxInside(*targets.region, workspace)) {
    fail("target region must lie inside the workspace");
  }
  for (const Vec3& p : targets.points) {
    if (!workspace.Contains(p)) fail("discrete target goal outside workspace");
  }
  if (!BoxInside(initial_object_region, workspace)) {
    fail("initial object region must lie inside the workspace");
  }
  for (size_t i = 0; i < obstacles.size(); ++i) {
    if (!obstacles[i].Intersects(workspace)) {
      fail("obstacle " + std::to_string(i) + " lies outside the workspace");
    }
  }
}

AccessibleSpace EnvConfig::GraphSpace() const {
  std::vector<Cuboid> inside;
  for (const Cuboid& c : obstacles) {
    if (c.Intersects(graph_bounds)) inside.push_back(c);
  }
  return AccessibleSpace(graph_bounds, std::move(inside));
}

Environment::Environment(EnvConfig config) : config_(std::move(config)) {
  config_.Validate();
}

bool Environment::Free(const Vec3& p) const {
  return std::none_of(config_.obstacles.begin(), config_.obstacles.end(),
                      [&](const Cuboid& c) { return c.Contains(p); });
}

Vec3 Environment::MoveBlocked(const Vec3& from, const Vec3& delta) const {
  const Vec3 target = config_.workspace.Clamp(from + delta);
  const double length = (target - from).norm();
  if (length == 0.0) return from;
  double first_contact = 1.0;
  bool blocked = false;
  for (const Cuboid& c : config_.obstacles) {
    if (const auto hit = ClipSegment(from, target, c)) {
      blocked = true;
      first_contact = std::min(first_contact, hit->enter);
    }
  }
  if (!blocked) return target;
  const double t = first_contact - kContactMargin / length;
  if (t <= 0.0) return from;
  return from + t * (target - from);
}

EnvState Environment::SampleInitialState(Rng& rng) const {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    EnvState s;
    s.object_pos = UniformIn(config_.initial_object_region, rng);
    if (!Free(s.object_pos)) continue;
    s.agent_pos = config_.workspace.Clamp(s.object_pos + config_.agent_offset);
    if (config_.kind == TaskKind::kPush) s.agent_pos = s.object_pos;
    if (!Free(s.agent_pos)) continue;
    return s;
  }
  throw Error(ErrorKind::kConfig, "env '" + config_.name +
                                      "': initial region is blocked by "
                                      "obstacles");
}

std::pair<EnvState, Vec3> Environment::Reset(Rng& rng) const {
  EnvState s = SampleInitialState(rng);
  Vec3 goal = config_.targets.Sample(rng);
  return {s, goal};
}

StepResult Environment::Step(const EnvState& state, const Action& action,
                             const Vec3& goal, bool past_success) const {
  if (state.step_count >= config_.horizon ||
      (!past_success && IsSuccess(AchievedGoal(state), goal))) {
    throw Error(ErrorKind::kEpisodeOver, "step called after episode end");
  }
  const Action a = action.Clamped();
  Vec3 delta = a.move * config_.action_scale;
  if (config_.planar) delta.z() = 0.0;

  StepResult out;
  EnvState& next = out.state;
  next = state;
  if (config_.kind == TaskKind::kPush) {
    next.object_pos = MoveBlocked(state.object_pos, delta);
    next.agent_pos = next.object_pos;
    next.holding = false;
  } else {
    bool released = false;
    if (a.grip > 0.0) {
      if (state.holding) {
        next.holding = false;
        released = true;
      } else if ((state.agent_pos - state.object_pos).norm() <=
                 config_.grab_radius) {
        next.holding = true;
        next.agent_pos = state.object_pos;
      }
    }
    next.agent_pos = MoveBlocked(next.agent_pos, delta);
    if (next.holding) {
      next.object_pos = next.agent_pos;
    } else if (released && config_.release_carry) {
      next.object_pos = MoveBlocked(state.object_pos, delta);
    }
  }
  next.step_count = state.step_count + 1;
  out.success = IsSuccess(AchievedGoal(next), goal);
  out.reward = out.success ? 0.0 : -1.0;
  out.done = out.success || next.step_count >= config_.horizon;
  return out;
}

}  // namespace hatlas
