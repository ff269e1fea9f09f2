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

#include "hatlas/goal_graph.h"

#include <algorithm>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "hatlas/config.h"
#include "hatlas/error.h"
#include "oracles.h"

namespace hatlas {
namespace {

using ::testing::HasSubstr;

const Bounds3 kUnitBox(0, 1, 0, 1, 0, 1);

// Thin slab [0,2] x [0,2] x [0,eps] with the central column blocked.
AccessibleSpace SlabWithHole() {
  constexpr double kEps = 0.01;
  return AccessibleSpace(Bounds3(0, 2, 0, 2, 0, kEps),
                         {Cuboid(Vec3(1, 1, kEps / 2), Vec3(0.55, 0.55, kEps))});
}

TEST(LatticeSpecTest, RejectsFewerThanTwoPerAxis) {
  EXPECT_THROW((LatticeSpec{1, 4, 4}.Validate()), Error);
  EXPECT_NO_THROW((LatticeSpec{2, 2, 2}.Validate()));
}

TEST(LatticeSpecTest, Spacing) {
  const Vec3 d = LatticeSpec{5, 3, 2}.Spacing(Bounds3(0, 1, 0, 2, 0, 0.5));
  EXPECT_DOUBLE_EQ(d.x(), 0.25);
  EXPECT_DOUBLE_EQ(d.y(), 1.0);
  EXPECT_DOUBLE_EQ(d.z(), 0.5);
}

TEST(GoalGraphTest, CornerLatticeIsAClique) {
  const GoalGraph g = GoalGraph::Build(AccessibleSpace(kUnitBox, {}), {2, 2, 2});
  ASSERT_EQ(g.NumVertices(), 8u);
  EXPECT_EQ(g.NumEdges(), 28u);
  for (VertexId v = 0; v < 8; ++v) {
    EXPECT_EQ(g.Neighbors(v).size(), 7u);
    for (const Edge& e : g.Neighbors(v)) {
      EXPECT_DOUBLE_EQ(e.weight, (g.Position(v) - g.Position(e.to)).norm());
    }
  }
}

TEST(GoalGraphTest, DemoObstacleExcludesInnerPoints) {
  const AccessibleSpace space(
      kUnitBox, {Cuboid(Vec3(0.5, 0.5, 0.5), Vec3(0.2, 0.2, 0.2))});
  const GoalGraph g = GoalGraph::Build(space, {4, 4, 4});
  EXPECT_EQ(g.NumCandidates(), 64);
  EXPECT_EQ(g.NumExcluded(), 8);
  for (const Vec3& p : g.positions()) EXPECT_TRUE(space.Contains(p));
  EXPECT_EQ(g.VertexAt({1, 1, 1}), GoalGraph::kExcluded);
}

TEST(GoalGraphTest, SlabNeighborsMatchBruteForce) {
  const GoalGraph g = GoalGraph::Build(SlabWithHole(), {3, 3, 2});
  EXPECT_EQ(g.NumVertices(), 16u);
  const auto expected = testing::BruteForceAdjacency(g);
  for (VertexId v = 0; v < static_cast<VertexId>(g.NumVertices()); ++v) {
    std::vector<std::pair<VertexId, double>> actual;
    for (const Edge& e : g.Neighbors(v)) actual.emplace_back(e.to, e.weight);
    auto want = expected[v];
    std::sort(actual.begin(), actual.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(actual, want) << "vertex " << v;
  }
}

TEST(GoalGraphTest, AdjacencyIsSymmetricAndLatticeLocal) {
  Rng rng = MakeRng(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto scene = testing::MakeRandomScene(rng, 3, 400);
    GoalGraph g = [&] {
      try {
        return GoalGraph::Build(scene.space, scene.spec);
      } catch (const Error&) {
        return GoalGraph::Build(AccessibleSpace(kUnitBox, {}), scene.spec);
      }
    }();
    for (VertexId u = 0; u < static_cast<VertexId>(g.NumVertices()); ++u) {
      EXPECT_LE(g.Neighbors(u).size(), 26u);
      for (const Edge& e : g.Neighbors(u)) {
        const LatticeIndex a = g.IndexOf(u), b = g.IndexOf(e.to);
        EXPECT_LE(std::abs(a.i - b.i), 1);
        EXPECT_LE(std::abs(a.j - b.j), 1);
        EXPECT_LE(std::abs(a.k - b.k), 1);
        const auto back = g.Neighbors(e.to);
        EXPECT_TRUE(std::any_of(back.begin(), back.end(),
                                [&](const Edge& r) { return r.to == u; }));
      }
    }
  }
}

TEST(DensityTest, StrictInequality) {
  const Bounds3 bounds(0, 0.4, 0, 0.4, 0, 0.4);
  const AccessibleSpace space(
      bounds, {Cuboid(Vec3(0.2, 0.2, 0.2), Vec3(0.1, 0.1, 0.1))});
  EXPECT_TRUE(CheckDensity(space, {5, 5, 5}));   // spacing 0.1 < 0.2
  EXPECT_FALSE(CheckDensity(space, {3, 5, 5}));  // spacing 0.2 along x
}

TEST(DensityTest, LabyrinthWallThickness) {
  const ExperimentConfig cfg =
      LoadExperimentConfig(std::string(HATLAS_CONFIG_DIR) + "/labyrinth_push.json");
  const AccessibleSpace space = cfg.env.GraphSpace();
  // The walls are 0.04 m thick; the workspace spans 0.6 m in x and y.
  EXPECT_FALSE(CheckDensity(space, {13, 13, 2}));  // spacing 0.05
  EXPECT_TRUE(CheckDensity(space, {21, 21, 2}));   // spacing 0.03
}

TEST(DensityTest, BuildNamesOffendingObstacle) {
  const AccessibleSpace space(
      kUnitBox, {Cuboid(Vec3(0.2, 0.2, 0.2), Vec3(0.3, 0.3, 0.3)),
                 Cuboid(Vec3(0.8, 0.8, 0.8), Vec3(0.05, 0.3, 0.3))});
  try {
    GoalGraph::Build(space, {5, 5, 5});
    FAIL() << "expected a density violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDensityViolation);
    EXPECT_THAT(e.what(), HasSubstr("obstacle 1"));
  }
}

TEST(GoalGraphTest, EmptyGraph) {
  const AccessibleSpace space(
      kUnitBox, {Cuboid(Vec3(0.5, 0.5, 0.5), Vec3(0.6, 0.6, 0.6))});
  try {
    GoalGraph::Build(space, {3, 3, 3});
    FAIL() << "expected an empty graph";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyGraph);
  }
}

TEST(GoalGraphTest, NoEdgeCrossesAnObstacle) {
  Rng rng = MakeRng(5, 0);
  int checked = 0;
  while (checked < 30) {
    const auto scene = testing::MakeRandomScene(rng, 4, 600);
    if (scene.space.obstacles().empty()) continue;
    ASSERT_TRUE(CheckDensity(scene.space, scene.spec));
    GoalGraph g = [&]() -> GoalGraph {
      try {
        return GoalGraph::Build(scene.space, scene.spec);
      } catch (const Error&) {
        return GoalGraph::Build(AccessibleSpace(kUnitBox, {}), {2, 2, 2});
      }
    }();
    for (VertexId u = 0; u < static_cast<VertexId>(g.NumVertices()); ++u) {
      for (const Edge& e : g.Neighbors(u)) {
        for (const Cuboid& c : g.space().obstacles()) {
          EXPECT_FALSE(SegmentIntersectsCuboid(g.Position(u), g.Position(e.to), c));
        }
      }
    }
    ++checked;
  }
}

TEST(GoalGraphTest, VertexCountEqualsCandidatesIffNoOverlap) {
  const GoalGraph free_graph =
      GoalGraph::Build(AccessibleSpace(kUnitBox, {}), {4, 3, 5});
  EXPECT_EQ(free_graph.NumExcluded(), 0);
  // Under the density criterion every obstacle covers at least one lattice
  // point, so any obstacle lowers the count.
  Rng rng = MakeRng(9, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto scene = testing::MakeRandomScene(rng, 3, 500);
    try {
      const GoalGraph g = GoalGraph::Build(scene.space, scene.spec);
      EXPECT_EQ(g.NumExcluded() == 0, scene.space.obstacles().empty());
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kEmptyGraph);
    }
  }
}

TEST(GoalGraphTest, ObstacleOrderDoesNotMatter) {
  const Cuboid a(Vec3(0.3, 0.3, 0.5), Vec3(0.15, 0.15, 0.3));
  const Cuboid b(Vec3(0.7, 0.7, 0.5), Vec3(0.15, 0.2, 0.3));
  const GoalGraph g1 = GoalGraph::Build(AccessibleSpace(kUnitBox, {a, b}), {6, 6, 6});
  const GoalGraph g2 = GoalGraph::Build(AccessibleSpace(kUnitBox, {b, a}), {6, 6, 6});
  EXPECT_EQ(g1.Hash(), g2.Hash());
  EXPECT_EQ(g1.NumEdges(), g2.NumEdges());
}

TEST(GoalGraphTest, SerializationRoundTrip) {
  const GoalGraph g = GoalGraph::Build(SlabWithHole(), {5, 5, 2});
  std::stringstream buf;
  g.Serialize(buf);
  const GoalGraph back = GoalGraph::Deserialize(buf);
  EXPECT_EQ(back.Hash(), g.Hash());
  EXPECT_EQ(back.NumVertices(), g.NumVertices());
  EXPECT_EQ(back.NumEdges(), g.NumEdges());
  std::stringstream garbage("HATLAS-NOPE");
  EXPECT_THROW(GoalGraph::Deserialize(garbage), Error);
}

}  // namespace
}  // namespace hatlas
