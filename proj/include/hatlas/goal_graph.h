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

#ifndef HATLAS_GOAL_GRAPH_H_
#define HATLAS_GOAL_GRAPH_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hatlas/geometry.h"

namespace hatlas {

using VertexId = std::int32_t;

// Vertex counts per axis of the orthorhombic lattice.
struct LatticeSpec {
  int n_x = 2;
  int n_y = 2;
  int n_z = 2;

  // Throws Error(kInvalidArgument) unless every count is >= 2.
  void Validate() const;
  std::int64_t NumCandidates() const {
    return std::int64_t{n_x} * n_y * n_z;
  }
  // Grid spacing (dx, dy, dz) of the lattice spanning `bounds`.
  Vec3 Spacing(const Bounds3& bounds) const;
  int Count(int axis) const { return axis == 0 ? n_x : axis == 1 ? n_y : n_z; }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

struct LatticeIndex {
  int i = 0;
  int j = 0;
  int k = 0;

  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

struct Edge {
  VertexId to;
  std::int32_t reserved = 0;  // keeps the serialized layout padding-free
  double weight;
};

// Index of the first obstacle whose edge lengths are not strictly larger than
// the lattice spacing on every axis, if any.
std::optional<size_t> FirstDensityViolation(const AccessibleSpace& space,
                                            const LatticeSpec& spec);
bool CheckDensity(const AccessibleSpace& space, const LatticeSpec& spec);

// Lattice graph over the accessible goal space. Candidate lattice points that
// fall outside the space are excluded; retained points are connected to every
// retained lattice neighbour (up to 26) with euclidean edge weights. Vertex
// ids follow row-major (i, j, k) order of the retained points.
class GoalGraph {
 public:
  static constexpr VertexId kExcluded = -1;

  // Throws Error(kDensityViolation) naming the offending obstacle, or
  // Error(kEmptyGraph) when no lattice point survives exclusion.
  static GoalGraph Build(const AccessibleSpace& space, const LatticeSpec& spec);

  const AccessibleSpace& space() const { return space_; }
  const LatticeSpec& spec() const { return spec_; }
  const Vec3& spacing() const { return spacing_; }

  size_t NumVertices() const { return positions_.size(); }
  size_t NumEdges() const { return edges_.size() / 2; }
  std::int64_t NumCandidates() const { return spec_.NumCandidates(); }
  std::int64_t NumExcluded() const {
    return NumCandidates() - static_cast<std::int64_t>(NumVertices());
  }

  const Vec3& Position(VertexId v) const { return positions_[v]; }
  std::span<const Vec3> positions() const { return positions_; }
  LatticeIndex IndexOf(VertexId v) const { return indices_[v]; }
  // kExcluded for lattice points removed by an obstacle. The index must lie
  // inside the lattice.
  VertexId VertexAt(const LatticeIndex& index) const {
    return lattice_to_vertex_[Flatten(index)];
  }
  bool InLattice(const LatticeIndex& index) const;
  // Position of lattice point (i, j, k), whether or not it was retained.
  Vec3 LatticePoint(const LatticeIndex& index) const;

  std::span<const Edge> Neighbors(VertexId v) const {
    return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
  }

  // Stable content hash (FNV-1a over the serialized form).
  std::uint64_t Hash() const;

  void Serialize(std::ostream& out) const;
  static GoalGraph Deserialize(std::istream& in);

 private:
  GoalGraph(const AccessibleSpace& space, const LatticeSpec& spec)
      : space_(space), spec_(spec) {}

  size_t Flatten(const LatticeIndex& index) const {
    return (static_cast<size_t>(index.i) * spec_.n_y + index.j) * spec_.n_z +
           index.k;
  }
  void Populate();

  AccessibleSpace space_;
  LatticeSpec spec_;
  Vec3 spacing_ = Vec3::Zero();
  std::vector<Vec3> positions_;
  std::vector<LatticeIndex> indices_;
  std::vector<VertexId> lattice_to_vertex_;
  // CSR adjacency.
  std::vector<size_t> offsets_;
  std::vector<Edge> edges_;
};

}  // namespace hatlas

#endif  // HATLAS_GOAL_GRAPH_H_
