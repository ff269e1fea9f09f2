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

#include "hatlas/distances.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>
#include <utility>

#include "hatlas/binary_io.h"
#include "hatlas/error.h"

namespace hatlas {
namespace {

constexpr char kTableMagic[] = "HATLAS-TABLE";
constexpr std::uint32_t kTableVersion = 1;

int RoundHalfUp(double a) { return static_cast<int>(std::floor(a + 0.5)); }

}  // namespace

const char* MetricModeName(MetricMode mode) {
  return mode == MetricMode::kGraph ? "graph" : "euclidean";
}

std::vector<double> ShortestDistancesFrom(const GoalGraph& graph,
                                          VertexId source) {
  std::vector<double> dist(graph.NumVertices(), kInfinity);
  using Entry = std::pair<double, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  dist[source] = 0.0;
  frontier.emplace(0.0, source);
  while (!frontier.empty()) {
    const auto [d, v] = frontier.top();
    frontier.pop();
    if (d > dist[v]) continue;
    for (const Edge& e : graph.Neighbors(v)) {
      const double candidate = d + e.weight;
      if (candidate < dist[e.to]) {
        dist[e.to] = candidate;
        frontier.emplace(candidate, e.to);
      }
    }
  }
  return dist;
}

DistanceTable DistanceTable::Compute(const GoalGraph& graph) {
  const size_t n = graph.NumVertices();
  if (n > kMaxTableVertices) {
    throw Error(ErrorKind::kTooManyVertices,
                "graph has " + std::to_string(n) +
                    " vertices; distance tables are limited to " +
                    std::to_string(kMaxTableVertices));
  }
  DistanceTable table;
  table.n_ = n;
  table.graph_hash_ = graph.Hash();
  table.d_.resize(n * n);
  for (size_t s = 0; s < n; ++s) {
    const auto row = ShortestDistancesFrom(graph, static_cast<VertexId>(s));
    std::copy(row.begin(), row.end(), table.d_.begin() + s * n);
  }
  return table;
}

void DistanceTable::Serialize(std::ostream& out) const {
  BinaryWriter w(out);
  w.PutHeader(kTableMagic, kTableVersion);
  w.Put<std::uint64_t>(n_);
  w.Put(graph_hash_);
  w.PutSpan<double>(d_);
}

DistanceTable DistanceTable::Deserialize(std::istream& in) {
  BinaryReader r(in);
  const auto version = r.GetHeader(kTableMagic);
  if (version != kTableVersion) {
    throw Error(ErrorKind::kIo,
                "unsupported table file version " + std::to_string(version));
  }
  DistanceTable table;
  table.n_ = r.Get<std::uint64_t>();
  table.graph_hash_ = r.Get<std::uint64_t>();
  table.d_ = r.GetVector<double>();
  if (table.n_ > kMaxTableVertices || table.d_.size() != table.n_ * table.n_) {
    throw Error(ErrorKind::kIo, "corrupt table file: inconsistent size");
  }
  return table;
}

GraphMetric::GraphMetric(std::shared_ptr<const GoalGraph> graph,
                         std::shared_ptr<const DistanceTable> table)
    : graph_(std::move(graph)), table_(std::move(table)) {
  if (!graph_ || !table_ || table_->size() != graph_->NumVertices() ||
      table_->graph_hash() != graph_->Hash()) {
    throw Error(ErrorKind::kInvalidArgument,
                "distance table does not belong to this graph");
  }
}

VertexId GraphMetric::NearestVertex(const Vec3& g) const {
  const AccessibleSpace& space = graph_->space();
  if (!space.Contains(g)) {
    std::ostringstream os;
    os << "goal (" << g.transpose() << ") is outside the accessible space";
    throw Error(ErrorKind::kOutsideAccessibleSpace, os.str());
  }
  const Vec3& lo = space.bounds().lo();
  const Vec3& spacing = graph_->spacing();
  const LatticeSpec& spec = graph_->spec();
  LatticeIndex index;
  int* slots[3] = {&index.i, &index.j, &index.k};
  for (int a = 0; a < 3; ++a) {
    *slots[a] = std::clamp(RoundHalfUp((g[a] - lo[a]) / spacing[a]), 0,
                           spec.Count(a) - 1);
  }
  const VertexId v = graph_->VertexAt(index);
  if (v != GoalGraph::kExcluded) return v;

  VertexId best = GoalGraph::kExcluded;
  double best_d2 = kInfinity;
  const auto positions = graph_->positions();
  for (size_t u = 0; u < positions.size(); ++u) {
    const double d2 = (positions[u] - g).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<VertexId>(u);
    }
  }
  return best;
}

std::optional<VertexId> GraphMetric::TryNearestVertex(const Vec3& g) const {
  if (!graph_->space().Contains(g)) return std::nullopt;
  return NearestVertex(g);
}

double GraphMetric::Distance(const Vec3& a, const Vec3& b) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  const AccessibleSpace& space = graph_->space();
  if (!space.Contains(a) || !space.Contains(b)) return kInfinity;
  return table_->At(NearestVertex(a), NearestVertex(b));
}

std::vector<VertexId> GraphMetric::ShortestPath(VertexId from,
                                                VertexId to) const {
  if (!std::isfinite(table_->At(from, to))) return {};
  std::vector<VertexId> path{from};
  VertexId v = from;
  while (v != to) {
    const double remaining = table_->At(v, to);
    VertexId next = GoalGraph::kExcluded;
    double best_slack = kInfinity;
    for (const Edge& e : graph_->Neighbors(v)) {
      const double slack = std::abs(e.weight + table_->At(e.to, to) - remaining);
      if (slack < best_slack) {
        best_slack = slack;
        next = e.to;
      }
    }
    if (next == GoalGraph::kExcluded || path.size() > graph_->NumVertices()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "distance table inconsistent with graph adjacency");
    }
    path.push_back(next);
    v = next;
  }
  return path;
}

void SaveGraphBundle(const std::string& path, const GoalGraph& graph,
                     const DistanceTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  graph.Serialize(out);
  table.Serialize(out);
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path);
}

GraphBundle LoadGraphBundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  auto graph = std::make_shared<const GoalGraph>(GoalGraph::Deserialize(in));
  auto table =
      std::make_shared<const DistanceTable>(DistanceTable::Deserialize(in));
  if (table->graph_hash() != graph->Hash()) {
    throw Error(ErrorKind::kIo, "table in " + path + " does not match graph");
  }
  return {std::move(graph), std::move(table)};
}

}  // namespace hatlas
