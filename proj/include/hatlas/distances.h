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

#ifndef HATLAS_DISTANCES_H_
#define HATLAS_DISTANCES_H_

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hatlas/geometry.h"
#include "hatlas/goal_graph.h"

namespace hatlas {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Largest graph for which an all-pairs table is materialized.
inline constexpr size_t kMaxTableVertices = 20000;

// Single-source shortest path lengths (Dijkstra); kInfinity where unreachable.
std::vector<double> ShortestDistancesFrom(const GoalGraph& graph,
                                          VertexId source);

// Dense row-major n x n table of shortest path lengths between graph
// vertices. Immutable once computed.
class DistanceTable {
 public:
  // One Dijkstra run per source. Throws Error(kTooManyVertices) beyond
  // kMaxTableVertices.
  static DistanceTable Compute(const GoalGraph& graph);

  size_t size() const { return n_; }
  double At(VertexId from, VertexId to) const {
    return d_[static_cast<size_t>(from) * n_ + static_cast<size_t>(to)];
  }
  std::span<const double> Row(VertexId from) const {
    return {d_.data() + static_cast<size_t>(from) * n_, n_};
  }
  std::uint64_t graph_hash() const { return graph_hash_; }

  void Serialize(std::ostream& out) const;
  static DistanceTable Deserialize(std::istream& in);

 private:
  size_t n_ = 0;
  std::uint64_t graph_hash_ = 0;
  std::vector<double> d_;
};

enum class MetricMode { kGraph, kEuclidean };

const char* MetricModeName(MetricMode mode);

// Distance between two goals used by hindsight goal generation.
class GoalMetric {
 public:
  virtual ~GoalMetric() = default;
  virtual MetricMode mode() const = 0;
  // kInfinity is a legal result.
  virtual double Distance(const Vec3& a, const Vec3& b) const = 0;
};

class EuclideanMetric final : public GoalMetric {
 public:
  MetricMode mode() const override { return MetricMode::kEuclidean; }
  double Distance(const Vec3& a, const Vec3& b) const override {
    return (a - b).norm();
  }
};

// Obstacle-aware metric: precomputed shortest distance between the lattice
// vertices nearest to each goal, or kInfinity when either goal is outside the
// accessible space.
class GraphMetric final : public GoalMetric {
 public:
  // Throws Error(kInvalidArgument) if the table was not computed for `graph`.
  GraphMetric(std::shared_ptr<const GoalGraph> graph,
              std::shared_ptr<const DistanceTable> table);

  MetricMode mode() const override { return MetricMode::kGraph; }
  double Distance(const Vec3& a, const Vec3& b) const override;

  // Nearest lattice vertex: per-axis round-half-up onto the lattice. When
  // that lattice point was excluded by an obstacle, the closest retained
  // vertex by euclidean distance (lowest id on ties). Throws
  // Error(kOutsideAccessibleSpace) if `g` is not in the accessible space.
  VertexId NearestVertex(const Vec3& g) const;

  // NearestVertex, or nullopt when `g` is outside the accessible space.
  std::optional<VertexId> TryNearestVertex(const Vec3& g) const;
  // Table lookup between two vertices; counted like Distance().
  double VertexDistance(VertexId a, VertexId b) const {
    queries_.fetch_add(1, std::memory_order_relaxed);
    return table_->At(a, b);
  }

  // Vertex sequence of one shortest path, empty when disconnected.
  std::vector<VertexId> ShortestPath(VertexId from, VertexId to) const;

  const GoalGraph& graph() const { return *graph_; }
  const DistanceTable& table() const { return *table_; }

  // Number of Distance() calls served so far.
  std::uint64_t query_count() const { return queries_.load(); }

 private:
  std::shared_ptr<const GoalGraph> graph_;
  std::shared_ptr<const DistanceTable> table_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

// Graph and table stored together in one versioned file.
struct GraphBundle {
  std::shared_ptr<const GoalGraph> graph;
  std::shared_ptr<const DistanceTable> table;
};
void SaveGraphBundle(const std::string& path, const GoalGraph& graph,
                     const DistanceTable& table);
GraphBundle LoadGraphBundle(const std::string& path);

}  // namespace hatlas

#endif  // HATLAS_DISTANCES_H_
