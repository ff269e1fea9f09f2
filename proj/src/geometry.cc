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

#include "hatlas/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hatlas/error.h"

namespace hatlas {

Bounds3::Bounds3(double x_min, double x_max, double y_min, double y_max,
                 double z_min, double z_max)
    : lo_(x_min, y_min, z_min), hi_(x_max, y_max, z_max) {
  for (int a = 0; a < 3; ++a) {
    if (!(lo_[a] < hi_[a]) || !std::isfinite(lo_[a]) ||
        !std::isfinite(hi_[a])) {
      std::ostringstream os;
      os << "bounds must satisfy min < max on every axis (axis " << a
         << ": " << lo_[a] << " .. " << hi_[a] << ")";
      throw Error(ErrorKind::kInvalidArgument, os.str());
    }
  }
}

Bounds3 Bounds3::FromCorners(const Vec3& lo, const Vec3& hi) {
  return Bounds3(lo.x(), hi.x(), lo.y(), hi.y(), lo.z(), hi.z());
}

bool Bounds3::Contains(const Vec3& p) const {
  return (p.array() >= lo_.array()).all() && (p.array() <= hi_.array()).all();
}

Vec3 Bounds3::Clamp(const Vec3& p) const {
  return p.cwiseMax(lo_).cwiseMin(hi_);
}

Cuboid::Cuboid(const Vec3& center, const Vec3& half_extents)
    : center_(center), half_extents_(half_extents) {
  if (!((half_extents_.array() > 0.0).all()) || !center_.allFinite() ||
      !half_extents_.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument,
                "cuboid half extents must be positive and finite");
  }
}

bool Cuboid::Contains(const Vec3& p) const {
  return ((p - center_).cwiseAbs().array() <= half_extents_.array()).all();
}

bool Cuboid::Intersects(const Bounds3& bounds) const {
  const Vec3 l = lo();
  const Vec3 h = hi();
  return (l.array() <= bounds.hi().array()).all() &&
         (h.array() >= bounds.lo().array()).all();
}

AccessibleSpace::AccessibleSpace(const Bounds3& bounds,
                                 std::vector<Cuboid> obstacles)
    : bounds_(bounds), obstacles_(std::move(obstacles)) {
  for (size_t i = 0; i < obstacles_.size(); ++i) {
    if (!obstacles_[i].Intersects(bounds_)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "obstacle " + std::to_string(i) +
                      " lies entirely outside the goal-space bounds");
    }
  }
}

bool AccessibleSpace::Contains(const Vec3& g) const {
  if (!bounds_.Contains(g)) return false;
  return std::none_of(obstacles_.begin(), obstacles_.end(),
                      [&](const Cuboid& c) { return c.Contains(g); });
}

std::optional<SegmentHit> ClipSegment(const Vec3& p1, const Vec3& p2,
                                      const Cuboid& cuboid) {
  const Vec3 d = p2 - p1;
  const Vec3 lo = cuboid.lo();
  const Vec3 hi = cuboid.hi();
  double t_enter = 0.0;
  double t_exit = 1.0;
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0) {
      if (p1[a] < lo[a] || p1[a] > hi[a]) return std::nullopt;
      continue;
    }
    double t0 = (lo[a] - p1[a]) / d[a];
    double t1 = (hi[a] - p1[a]) / d[a];
    if (t0 > t1) std::swap(t0, t1);
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
    if (t_enter > t_exit) return std::nullopt;
  }
  return SegmentHit{t_enter, t_exit};
}

bool SegmentIntersectsCuboid(const Vec3& p1, const Vec3& p2,
                             const Cuboid& cuboid) {
  if (p1 == p2) return cuboid.Contains(p1);
  const auto hit = ClipSegment(p1, p2, cuboid);
  if (!hit) return false;
  // Open segment: a touch only at an endpoint does not count.
  if (hit->enter == hit->exit) return hit->enter > 0.0 && hit->enter < 1.0;
  return hit->enter < 1.0 && hit->exit > 0.0;
}

}  // namespace hatlas
