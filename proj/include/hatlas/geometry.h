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

#ifndef HATLAS_GEOMETRY_H_
#define HATLAS_GEOMETRY_H_

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace hatlas {

using Vec3 = Eigen::Vector3d;

// Axis-aligned box with strictly positive extent on every axis. Containment
// is inclusive: points on the box surface are inside.
class Bounds3 {
 public:
  Bounds3(double x_min, double x_max, double y_min, double y_max, double z_min,
          double z_max);
  static Bounds3 FromCorners(const Vec3& lo, const Vec3& hi);

  const Vec3& lo() const { return lo_; }
  const Vec3& hi() const { return hi_; }
  Vec3 Extent() const { return hi_ - lo_; }

  bool Contains(const Vec3& p) const;
  Vec3 Clamp(const Vec3& p) const;

 private:
  Vec3 lo_;
  Vec3 hi_;
};

// Axis-aligned obstacle. Membership is closed: the faces belong to the
// obstacle.
class Cuboid {
 public:
  Cuboid(const Vec3& center, const Vec3& half_extents);

  const Vec3& center() const { return center_; }
  const Vec3& half_extents() const { return half_extents_; }
  Vec3 lo() const { return center_ - half_extents_; }
  Vec3 hi() const { return center_ + half_extents_; }
  // Edge lengths (alpha, beta, gamma).
  Vec3 EdgeLengths() const { return 2.0 * half_extents_; }

  bool Contains(const Vec3& p) const;
  bool Intersects(const Bounds3& bounds) const;

  friend bool operator==(const Cuboid& a, const Cuboid& b) {
    return a.center_ == b.center_ && a.half_extents_ == b.half_extents_;
  }

 private:
  Vec3 center_;
  Vec3 half_extents_;
};

// Bounded goal region minus the obstacle cuboids. Immutable.
class AccessibleSpace {
 public:
  // Throws Error(kInvalidArgument) when an obstacle lies entirely outside
  // `bounds`.
  AccessibleSpace(const Bounds3& bounds, std::vector<Cuboid> obstacles);

  const Bounds3& bounds() const { return bounds_; }
  std::span<const Cuboid> obstacles() const { return obstacles_; }

  // Inside the bounds (inclusive) and strictly outside every obstacle.
  bool Contains(const Vec3& g) const;

 private:
  Bounds3 bounds_;
  std::vector<Cuboid> obstacles_;
};

// Parameter interval [enter, exit] (clipped to [0, 1]) over which the segment
// p1 + t * (p2 - p1) lies in the closed cuboid, or nullopt if it never does.
struct SegmentHit {
  double enter;
  double exit;
};
std::optional<SegmentHit> ClipSegment(const Vec3& p1, const Vec3& p2,
                                      const Cuboid& cuboid);

// True iff the open segment (p1, p2) meets the closed cuboid (slab
// clipping). A degenerate segment p1 == p2 is treated as the point itself.
bool SegmentIntersectsCuboid(const Vec3& p1, const Vec3& p2,
                             const Cuboid& cuboid);

}  // namespace hatlas

#endif  // HATLAS_GEOMETRY_H_
