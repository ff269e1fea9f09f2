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

#ifndef HATLAS_EXPERIMENT_H_
#define HATLAS_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hatlas/config.h"
#include "hatlas/distances.h"
#include "hatlas/trainer.h"

namespace hatlas {

inline constexpr char kVersion[] = "0.1.0";
inline constexpr char kCacheEnvVar[] = "HINDSIGHT_ATLAS_CACHE";

// Graph and table for the config's goal space and lattice. Loaded from
// `explicit_path` when given, else from the cache directory named by
// HINDSIGHT_ATLAS_CACHE (built and stored there on a miss), else built in
// memory.
GraphBundle ObtainGraph(const ExperimentConfig& config,
                        const std::string& explicit_path = "");

// Cache file name for a config's graph (depends on goal space and lattice
// only).
std::string GraphCacheKey(const ExperimentConfig& config);

struct RunOptions {
  // Output directory; empty keeps everything in memory.
  std::string out_dir;
  bool force = false;
  // Fill the metrics CSV "seconds" column with wall-clock time. Off by
  // default so repeated runs produce byte-identical CSVs.
  bool wall_clock = false;
  std::string graph_path;
  // Checkpoint every this many iterations (0: only at the end).
  int checkpoint_every = 0;
  // Called after every iteration.
  std::function<void(const IterationMetrics&)> on_iteration;
};

struct RunResult {
  std::vector<IterationMetrics> metrics;
  // Iterations whose exploration used sampled targets, and graph lookups,
  // for instrumentation checks.
  std::uint64_t graph_queries = 0;
  std::uint64_t graph_hash = 0;
  // First iteration at which the hand-off fired (0 if never).
  int stop_iteration = 0;
  // Close fraction of the selection that fired the hand-off.
  double stop_close_fraction = 0.0;
};

inline constexpr char kMetricsHeader[] =
    "iteration,success_rate,mean_dG_to_target,mean_euclid_to_target,stopped,"
    "seconds";
std::string FormatMetricsRow(const IterationMetrics& m, bool wall_clock);

// Full training run: manifest (written first), per-iteration metrics CSV,
// goal-selection log and final checkpoint. On a module error the last good
// iteration is checkpointed and the error rethrown.
RunResult RunTraining(const ExperimentConfig& config, const RunOptions& options);

// Linear-interpolated quantile of unsorted values (q in [0, 1]).
double Quantile(std::vector<double> values, double q);

enum class SweepParam { kVertexCount, kDeltaStop };
SweepParam ParseSweepParam(const std::string& name);

struct SweepCell {
  double value = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::vector<double> success;  // per iteration
};

struct SweepResult {
  std::vector<SweepCell> cells;
};

// One training run per (value, seed), up to `jobs` at a time. Failed cells
// are recorded, not thrown. Writes cells.csv and aggregate.csv (median and
// interquartile range of success per value and iteration) under out_dir.
SweepResult RunSweep(const std::string& config_path,
                     const std::vector<std::string>& overrides,
                     SweepParam param, const std::vector<double>& values,
                     const std::vector<std::uint64_t>& seeds, TrainMode mode,
                     const std::string& out_dir, int jobs);

// Merges the metrics of several run directories into one long table. Bad
// inputs are skipped with a message in `warnings`. Returns the number of runs
// merged; nothing is written when it is zero.
int ExportCurves(const std::vector<std::string>& run_dirs,
                 const std::string& out_path,
                 std::vector<std::string>& warnings);

}  // namespace hatlas

#endif  // HATLAS_EXPERIMENT_H_
