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

#include <random>

#include "gtest/gtest.h"
#include "hatlas/error.h"
#include "oracles.h"

namespace hatlas {
namespace {

const Bounds3 kUnitBox(0, 1, 0, 1, 0, 1);

TEST(Bounds3Test, RejectsEmptyInterval) {
  EXPECT_THROW(Bounds3(0, 0, 0, 1, 0, 1), Error);
  EXPECT_THROW(Bounds3(0, 1, 1, 0, 0, 1), Error);
}

TEST(Bounds3Test, ContainsIsInclusive) {
  EXPECT_TRUE(kUnitBox.Contains(Vec3(0, 0, 0)));
  EXPECT_TRUE(kUnitBox.Contains(Vec3(1, 1, 1)));
  EXPECT_FALSE(kUnitBox.Contains(Vec3(1.0 + 1e-12, 0.5, 0.5)));
  EXPECT_EQ(kUnitBox.Clamp(Vec3(2, -1, 0.5)), Vec3(1, 0, 0.5));
}

TEST(CuboidTest, RequiresPositiveHalfExtents) {
  EXPECT_THROW(Cuboid(Vec3::Zero(), Vec3(0.1, 0.0, 0.1)), Error);
  const Cuboid c(Vec3(0.5, 0.5, 0.5), Vec3(0.1, 0.2, 0.3));
  EXPECT_EQ(c.EdgeLengths(), Vec3(0.2, 0.4, 0.6));
}

TEST(AccessibleSpaceTest, InteriorPoint) {
  const AccessibleSpace space(kUnitBox, {});
  EXPECT_TRUE(space.Contains(Vec3(0.5, 0.5, 0.5)));
}

TEST(AccessibleSpaceTest, ObstacleCenterExcluded) {
  const AccessibleSpace space(
      kUnitBox, {Cuboid(Vec3(0.5, 0.5, 0.5), Vec3(0.1, 0.1, 0.1))});
  EXPECT_FALSE(space.Contains(Vec3(0.5, 0.5, 0.5)));
}

TEST(AccessibleSpaceTest, OutsideBounds) {
  const AccessibleSpace space(kUnitBox, {});
  EXPECT_FALSE(space.Contains(Vec3(1.5, 0.5, 0.5)));
}

TEST(AccessibleSpaceTest, ObstacleFaceBelongsToObstacle) {
  const AccessibleSpace space(
      kUnitBox, {Cuboid(Vec3(0.5, 0.5, 0.5), Vec3(0.1, 0.1, 0.1))});
  EXPECT_FALSE(space.Contains(Vec3(0.6, 0.5, 0.5)));
  EXPECT_TRUE(space.Contains(Vec3(0.6 + 1e-9, 0.5, 0.5)));
}

TEST(AccessibleSpaceTest, RejectsObstacleOutsideBounds) {
  EXPECT_THROW(AccessibleSpace(kUnitBox, {Cuboid(Vec3(3, 3, 3), Vec3(0.1, 0.1, 0.1))}),
               Error);
  // Touching the bounds from outside still intersects the closed box.
  EXPECT_NO_THROW(AccessibleSpace(
      kUnitBox, {Cuboid(Vec3(1.1, 0.5, 0.5), Vec3(0.1, 0.1, 0.1))}));
}

TEST(AccessibleSpaceTest, RemovingObstacleNeverShrinksSpace) {
  Rng rng = MakeRng(7, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<Cuboid> obstacles = {
      Cuboid(Vec3(0.3, 0.3, 0.3), Vec3(0.1, 0.2, 0.1)),
      Cuboid(Vec3(0.7, 0.6, 0.5), Vec3(0.2, 0.1, 0.3))};
  const AccessibleSpace both(kUnitBox, obstacles);
  const AccessibleSpace one(kUnitBox, {obstacles[0]});
  for (int i = 0; i < 10000; ++i) {
    const Vec3 g(u(rng), u(rng), u(rng));
    if (both.Contains(g)) EXPECT_TRUE(one.Contains(g));
  }
}

TEST(SegmentTest, ThroughCenter) {
  const Cuboid c(Vec3(0.5, 0, 0), Vec3(0.1, 0.1, 0.1));
  EXPECT_TRUE(SegmentIntersectsCuboid(Vec3(0, 0, 0), Vec3(1, 0, 0), c));
}

TEST(SegmentTest, MissMatchesSampling) {
  const Cuboid c(Vec3(0.5, 0, 0), Vec3(0.1, 0.1, 0.1));
  const Vec3 p1(0, 0, 0), p2(0, 1, 0);
  EXPECT_FALSE(SegmentIntersectsCuboid(p1, p2, c));
  EXPECT_FALSE(testing::SampledSegmentHitsCuboid(p1, p2, c, 10000));
}

TEST(SegmentTest, DegenerateSegment) {
  const Cuboid c(Vec3(0.5, 0, 0), Vec3(0.1, 0.1, 0.1));
  EXPECT_FALSE(SegmentIntersectsCuboid(Vec3::Zero(), Vec3::Zero(), c));
  EXPECT_TRUE(SegmentIntersectsCuboid(Vec3(0.5, 0, 0), Vec3(0.5, 0, 0), c));
}

TEST(SegmentTest, ClipReportsEntryAndExit) {
  const Cuboid c(Vec3(0.5, 0, 0), Vec3(0.1, 0.1, 0.1));
  const auto hit = ClipSegment(Vec3(0, 0, 0), Vec3(1, 0, 0), c);
  ASSERT_TRUE(hit.has_value());
  EXPECT_NEAR(hit->enter, 0.4, 1e-12);
  EXPECT_NEAR(hit->exit, 0.6, 1e-12);
}

TEST(SegmentTest, AgreesWithSamplingOnRandomSegments) {
  Rng rng = MakeRng(11, 0);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  std::uniform_real_distribution<double> h(0.05, 0.3);
  int hits = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Cuboid c(Vec3(u(rng), u(rng), u(rng)), Vec3(h(rng), h(rng), h(rng)));
    const Vec3 p1(u(rng), u(rng), u(rng));
    const Vec3 p2(u(rng), u(rng), u(rng));
    const bool exact = SegmentIntersectsCuboid(p1, p2, c);
    const bool sampled = testing::SampledSegmentHitsCuboid(p1, p2, c, 10000);
    // Sampling can only miss grazing hits shorter than one sample spacing.
    if (sampled) EXPECT_TRUE(exact);
    if (exact && !sampled) {
      const auto clip = ClipSegment(p1, p2, c);
      ASSERT_TRUE(clip.has_value());
      EXPECT_LT(clip->exit - clip->enter, 2e-4);
    }
    hits += exact;
  }
  EXPECT_GT(hits, 100);
}

}  // namespace
}  // namespace hatlas
