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
#include <array>
#include <sstream>
#include <tuple>

#include "hatlas/binary_io.h"
#include "hatlas/error.h"

namespace hatlas {
namespace {

constexpr char kGraphMagic[] = "HATLAS-GRAPH";
constexpr std::uint32_t kGraphVersion = 1;

double AxisCoordinate(double lo, double hi, double spacing, int count,
                      int index) {
  // Pin the last lattice coordinate to the bound so rounding never pushes it
  // outside the box.
  return index == count - 1 ? hi : lo + spacing * index;
}

std::vector<Cuboid> SortedObstacles(std::span<const Cuboid> obstacles) {
  std::vector<Cuboid> sorted(obstacles.begin(), obstacles.end());
  auto key = [](const Cuboid& c) {
    return std::tuple(c.center().x(), c.center().y(), c.center().z(),
                      c.half_extents().x(), c.half_extents().y(),
                      c.half_extents().z());
  };
  std::sort(sorted.begin(), sorted.end(),
            [&](const Cuboid& a, const Cuboid& b) { return key(a) < key(b); });
  return sorted;
}

}  // namespace

void LatticeSpec::Validate() const {
  if (n_x < 2 || n_y < 2 || n_z < 2) {
    std::ostringstream os;
    os << "lattice needs at least 2 vertices per axis (got " << n_x << "x"
       << n_y << "x" << n_z << ")";
    throw Error(ErrorKind::kInvalidArgument, os.str());
  }
}

Vec3 LatticeSpec::Spacing(const Bounds3& bounds) const {
  const Vec3 extent = bounds.Extent();
  return {extent.x() / (n_x - 1), extent.y() / (n_y - 1),
          extent.z() / (n_z - 1)};
}

std::optional<size_t> FirstDensityViolation(const AccessibleSpace& space,
                                            const LatticeSpec& spec) {
  spec.Validate();
  const Vec3 spacing = spec.Spacing(space.bounds());
  const auto obstacles = space.obstacles();
  for (size_t i = 0; i < obstacles.size(); ++i) {
    if (!(spacing.array() < obstacles[i].EdgeLengths().array()).all()) {
      return i;
    }
  }
  return std::nullopt;
}

bool CheckDensity(const AccessibleSpace& space, const LatticeSpec& spec) {
  return !FirstDensityViolation(space, spec).has_value();
}

GoalGraph GoalGraph::Build(const AccessibleSpace& space,
                           const LatticeSpec& spec) {
  spec.Validate();
  if (const auto bad = FirstDensityViolation(space, spec)) {
    const Cuboid& c = space.obstacles()[*bad];
    const Vec3 spacing = spec.Spacing(space.bounds());
    std::ostringstream os;
    os << "graph density criterion violated by obstacle " << *bad
       << " (center " << c.center().transpose() << ", edges "
       << c.EdgeLengths().transpose() << " m, lattice spacing "
       << spacing.transpose() << " m)";
    throw Error(ErrorKind::kDensityViolation, os.str());
  }
  GoalGraph graph(space, spec);
  graph.Populate();
  if (graph.NumVertices() == 0) {
    throw Error(ErrorKind::kEmptyGraph,
                "no lattice point lies in the accessible space");
  }
  return graph;
}

bool GoalGraph::InLattice(const LatticeIndex& index) const {
  return index.i >= 0 && index.i < spec_.n_x && index.j >= 0 &&
         index.j < spec_.n_y && index.k >= 0 && index.k < spec_.n_z;
}

Vec3 GoalGraph::LatticePoint(const LatticeIndex& index) const {
  const Bounds3& b = space_.bounds();
  return {AxisCoordinate(b.lo().x(), b.hi().x(), spacing_.x(), spec_.n_x,
                         index.i),
          AxisCoordinate(b.lo().y(), b.hi().y(), spacing_.y(), spec_.n_y,
                         index.j),
          AxisCoordinate(b.lo().z(), b.hi().z(), spacing_.z(), spec_.n_z,
                         index.k)};
}

void GoalGraph::Populate() {
  spacing_ = spec_.Spacing(space_.bounds());
  lattice_to_vertex_.assign(static_cast<size_t>(spec_.NumCandidates()),
                            kExcluded);
  for (int i = 0; i < spec_.n_x; ++i) {
    for (int j = 0; j < spec_.n_y; ++j) {
      for (int k = 0; k < spec_.n_z; ++k) {
        const LatticeIndex index{i, j, k};
        const Vec3 p = LatticePoint(index);
        if (!space_.Contains(p)) continue;
        lattice_to_vertex_[Flatten(index)] =
            static_cast<VertexId>(positions_.size());
        positions_.push_back(p);
        indices_.push_back(index);
      }
    }
  }

  // Lattice adjacency (|di|, |dj|, |dk| <= 1). A diagonal edge can still clip
  // the corner of an obstacle whose corner vertices were all excluded, so
  // edges whose segment meets an obstacle are dropped.
  offsets_.assign(positions_.size() + 1, 0);
  for (size_t v = 0; v < positions_.size(); ++v) {
    const LatticeIndex& a = indices_[v];
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        for (int dk = -1; dk <= 1; ++dk) {
          if (di == 0 && dj == 0 && dk == 0) continue;
          const LatticeIndex b{a.i + di, a.j + dj, a.k + dk};
          if (!InLattice(b)) continue;
          const VertexId u = VertexAt(b);
          if (u == kExcluded) continue;
          const Vec3& p1 = positions_[v];
          const Vec3& p2 = positions_[u];
          const bool blocked = std::any_of(
              space_.obstacles().begin(), space_.obstacles().end(),
              [&](const Cuboid& c) {
                return SegmentIntersectsCuboid(p1, p2, c);
              });
          if (blocked) continue;
          edges_.push_back({u, 0, (p2 - p1).norm()});
        }
      }
    }
    offsets_[v + 1] = edges_.size();
  }
}

void GoalGraph::Serialize(std::ostream& out) const {
  BinaryWriter w(out);
  w.PutHeader(kGraphMagic, kGraphVersion);
  const Bounds3& b = space_.bounds();
  w.PutVec3(b.lo());
  w.PutVec3(b.hi());
  const auto obstacles = SortedObstacles(space_.obstacles());
  w.Put<std::uint64_t>(obstacles.size());
  for (const Cuboid& c : obstacles) {
    w.PutVec3(c.center());
    w.PutVec3(c.half_extents());
  }
  w.Put(spec_);
  w.PutVec3s(positions_);
  w.PutSpan<LatticeIndex>(indices_);
  w.PutSpan<VertexId>(lattice_to_vertex_);
  w.PutSpan<size_t>(offsets_);
  w.PutSpan<Edge>(edges_);
}

GoalGraph GoalGraph::Deserialize(std::istream& in) {
  BinaryReader r(in);
  const auto version = r.GetHeader(kGraphMagic);
  if (version != kGraphVersion) {
    throw Error(ErrorKind::kIo,
                "unsupported graph file version " + std::to_string(version));
  }
  const Vec3 lo = r.GetVec3();
  const Vec3 hi = r.GetVec3();
  const auto num_obstacles = r.Get<std::uint64_t>();
  if (num_obstacles > 100000) throw Error(ErrorKind::kIo, "corrupt graph file");
  std::vector<Cuboid> obstacles;
  for (std::uint64_t i = 0; i < num_obstacles; ++i) {
    const Vec3 center = r.GetVec3();
    const Vec3 half = r.GetVec3();
    obstacles.emplace_back(center, half);
  }
  const auto spec = r.Get<LatticeSpec>();
  spec.Validate();
  GoalGraph graph(AccessibleSpace(Bounds3::FromCorners(lo, hi),
                                  std::move(obstacles)),
                  spec);
  graph.spacing_ = spec.Spacing(graph.space_.bounds());
  graph.positions_ = r.GetVec3s();
  graph.indices_ = r.GetVector<LatticeIndex>();
  graph.lattice_to_vertex_ = r.GetVector<VertexId>();
  graph.offsets_ = r.GetVector<size_t>();
  graph.edges_ = r.GetVector<Edge>();
  const size_t n = graph.positions_.size();
  if (graph.indices_.size() != n ||
      graph.lattice_to_vertex_.size() !=
          static_cast<size_t>(spec.NumCandidates()) ||
      graph.offsets_.size() != n + 1 ||
      graph.offsets_.back() != graph.edges_.size()) {
    throw Error(ErrorKind::kIo, "corrupt graph file: inconsistent sizes");
  }
  for (const Edge& e : graph.edges_) {
    if (e.to < 0 || static_cast<size_t>(e.to) >= n) {
      throw Error(ErrorKind::kIo, "corrupt graph file: bad edge");
    }
  }
  return graph;
}

std::uint64_t GoalGraph::Hash() const {
  std::ostringstream os;
  Serialize(os);
  Fnv1a h;
  h.Update(os.str());
  return h.digest();
}

}  // namespace hatlas
