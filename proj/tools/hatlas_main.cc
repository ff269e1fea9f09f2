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

// Command-line front end: graph build/query, train, evaluate, sweep and
// curve export.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hatlas/binary_io.h"
#include "hatlas/config.h"
#include "hatlas/distances.h"
#include "hatlas/error.h"
#include "hatlas/experiment.h"
#include "hatlas/goal_graph.h"
#include "hatlas/learner.h"
#include "hatlas/random.h"
#include "hatlas/trainer.h"

namespace hatlas {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kDensityViolation:
    case ErrorKind::kEmptyGraph:
    case ErrorKind::kOutsideAccessibleSpace:
    case ErrorKind::kTooManyVertices:
    case ErrorKind::kConfig:
      return kExitValidation;
    default:
      return kExitRuntime;
  }
}

int Report(const Error& e) {
  std::cerr << "error (" << ErrorKindName(e.kind()) << "): " << e.what()
            << "\n";
  return ExitCodeFor(e.kind());
}

Vec3 ParsePoint(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      v.clear();
      break;
    }
  }
  if (v.size() != 3) {
    throw CLI::ValidationError("point", "expected x,y,z but got '" + text + "'");
  }
  return {v[0], v[1], v[2]};
}

std::string FormatPoint(const Vec3& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.4f, %.4f, %.4f)", p.x(), p.y(), p.z());
  return buf;
}

struct GraphBuildArgs {
  std::string config;
  std::vector<std::string> overrides;
  int n = 0, nx = 0, ny = 0, nz = 0;
  std::string out;
};

int GraphBuild(const GraphBuildArgs& args) {
  std::vector<std::string> overrides = args.overrides;
  ExperimentConfig cfg = LoadExperimentConfig(args.config, overrides);
  if (args.n != 0) cfg.lattice = {args.n, args.n, args.n};
  if (args.nx != 0) cfg.lattice.n_x = args.nx;
  if (args.ny != 0) cfg.lattice.n_y = args.ny;
  if (args.nz != 0) cfg.lattice.n_z = args.nz;
  cfg.lattice.Validate();

  const auto start = std::chrono::steady_clock::now();
  const GoalGraph graph = GoalGraph::Build(cfg.env.GraphSpace(), cfg.lattice);
  const DistanceTable table = DistanceTable::Compute(graph);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!args.out.empty()) SaveGraphBundle(args.out, graph, table);

  std::printf("lattice %dx%dx%d: %lld candidates, %lld excluded, %zu vertices, "
              "%lld edges\n",
              cfg.lattice.n_x, cfg.lattice.n_y, cfg.lattice.n_z,
              static_cast<long long>(graph.NumCandidates()),
              static_cast<long long>(graph.NumExcluded()), graph.NumVertices(),
              static_cast<long long>(graph.NumEdges()));
  std::printf("table %zu x %zu, build %.3f s, hash %s\n", graph.NumVertices(),
              graph.NumVertices(), seconds, HexDigest(graph.Hash()).c_str());
  if (!args.out.empty()) std::printf("wrote %s\n", args.out.c_str());
  return kExitOk;
}

int GraphQuery(const std::string& path, const std::string& a,
               const std::string& b) {
  const Vec3 g1 = ParsePoint(a);
  const Vec3 g2 = ParsePoint(b);
  const GraphBundle bundle = LoadGraphBundle(path);
  const GraphMetric metric(bundle.graph, bundle.table);
  const double d = metric.Distance(g1, g2);
  std::printf("d_G %s\n", std::isinf(d) ? "inf" : std::to_string(d).c_str());
  std::printf("euclidean %.6f\n", (g1 - g2).norm());
  const auto v1 = metric.TryNearestVertex(g1);
  const auto v2 = metric.TryNearestVertex(g2);
  if (!v1) std::printf("note: %s is outside the accessible space\n", a.c_str());
  if (!v2) std::printf("note: %s is outside the accessible space\n", b.c_str());
  if (v1 && v2 && !std::isinf(d)) {
    std::printf("path");
    for (VertexId v : metric.ShortestPath(*v1, *v2)) {
      std::printf(" %d%s", v, FormatPoint(bundle.graph->Position(v)).c_str());
    }
    std::printf("\n");
  }
  return kExitOk;
}

struct TrainArgs {
  std::string config;
  std::string mode;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  std::vector<std::string> overrides;
  bool force = false;
  bool wall_clock = false;
  bool quiet = false;
  std::string graph;
  int checkpoint_every = 0;
};

int Train(const TrainArgs& args) {
  std::vector<std::string> overrides = args.overrides;
  if (!args.mode.empty()) {
    overrides.push_back("trainer.mode=\"" + args.mode + "\"");
  }
  if (args.seed_set) {
    overrides.push_back("trainer.seed=" + std::to_string(args.seed));
  }
  ExperimentConfig cfg;
  try {
    cfg = LoadExperimentConfig(args.config, overrides);
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorKindName(e.kind()) << "): " << e.what()
              << "\n";
    return e.kind() == ErrorKind::kIo ? kExitRuntime : kExitValidation;
  }
  RunOptions options;
  options.out_dir = args.out;
  options.force = args.force;
  options.wall_clock = args.wall_clock;
  options.graph_path = args.graph;
  options.checkpoint_every = args.checkpoint_every;
  if (!args.quiet) {
    options.on_iteration = [](const IterationMetrics& m) {
      std::printf("iter %4d  success %.3f  d_G %.3f  euclid %.3f%s\n",
                  m.iteration, m.success_rate, m.mean_graph_distance,
                  m.mean_euclidean_distance, m.stopped ? "  [her]" : "");
      std::fflush(stdout);
    };
  }
  try {
    const RunResult result = RunTraining(cfg, options);
    if (!result.metrics.empty()) {
      std::printf("final success %.3f after %zu iterations\n",
                  result.metrics.back().success_rate, result.metrics.size());
    }
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorKindName(e.kind()) << "): " << e.what()
              << "\n";
    // Errors raised once training is under way are runtime failures; the
    // last good iteration is checkpointed by RunTraining.
    if (e.kind() == ErrorKind::kDensityViolation ||
        e.kind() == ErrorKind::kEmptyGraph ||
        e.kind() == ErrorKind::kTooManyVertices ||
        e.kind() == ErrorKind::kConfig) {
      return kExitValidation;
    }
    if (e.kind() == ErrorKind::kInvalidArgument &&
        std::string(e.what()).find("already holds a run") != std::string::npos) {
      return kExitValidation;
    }
    return kExitRuntime;
  }
  return kExitOk;
}

int EvaluateRun(const std::string& run_dir, int episodes, std::uint64_t seed) {
  namespace fs = std::filesystem;
  std::ifstream in(fs::path(run_dir) / "manifest.json");
  if (!in) {
    throw Error(ErrorKind::kIo, "no manifest.json in " + run_dir);
  }
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kIo, std::string("corrupt manifest: ") + e.what());
  }
  const ExperimentConfig cfg = ParseExperimentConfig(manifest.at("config"));
  DiscretizedQLearner learner(cfg.learner);
  std::ifstream table(fs::path(run_dir) / "checkpoint" / "learner.bin",
                      std::ios::binary);
  if (!table) throw Error(ErrorKind::kIo, "no checkpoint in " + run_dir);
  learner.Load(table);
  Rng rng = MakeRng(seed, 0xe7a1);
  const double rate =
      Evaluate(learner, Environment(cfg.env), episodes, rng);
  std::printf("success %.4f over %d episodes\n", rate, episodes);
  return kExitOk;
}

struct SweepArgs {
  std::string config;
  std::string param;
  std::vector<std::string> values;
  std::vector<std::uint64_t> seeds{1};
  std::string mode = "g-hgg";
  std::string out;
  std::vector<std::string> overrides;
  int jobs = 1;
};

int Sweep(const SweepArgs& args) {
  std::vector<double> values;
  for (const std::string& text : args.values) {
    size_t used = 0;
    try {
      values.push_back(std::stod(text, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      std::cerr << "error: --values must be a comma-separated list of numbers\n";
      return kExitUsage;
    }
  }
  if (values.empty()) {
    std::cerr << "error: --values must list at least one value\n";
    return kExitUsage;
  }
  const SweepParam param = ParseSweepParam(args.param);
  const TrainMode mode = ParseTrainMode(args.mode);
  const SweepResult result =
      RunSweep(args.config, args.overrides, param, values, args.seeds,
               mode, args.out, args.jobs);
  int failed = 0;
  for (const SweepCell& c : result.cells) {
    if (c.ok) {
      std::printf("%s=%g seed=%llu final_success=%.3f\n", args.param.c_str(),
                  c.value, static_cast<unsigned long long>(c.seed),
                  c.success.empty() ? 0.0 : c.success.back());
    } else {
      ++failed;
      std::printf("%s=%g seed=%llu FAILED: %s\n", args.param.c_str(), c.value,
                  static_cast<unsigned long long>(c.seed), c.error.c_str());
    }
  }
  std::printf("%zu cells, %d failed\n", result.cells.size(), failed);
  return kExitOk;
}

int Export(const std::vector<std::string>& dirs, const std::string& out) {
  std::vector<std::string> warnings;
  const int merged = ExportCurves(dirs, out, warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  if (merged == 0) {
    std::cerr << "error: no valid run directories\n";
    return kExitUsage;
  }
  std::printf("merged %d runs into %s\n", merged, out.c_str());
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"hatlas: graph-based hindsight goal generation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* graph = app.add_subcommand("graph", "Build or query goal graphs");
  graph->require_subcommand(1);

  GraphBuildArgs build_args;
  auto* build = graph->add_subcommand("build", "Build graph + distance table");
  build->add_option("config", build_args.config, "Experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  build->add_option("--n", build_args.n, "Vertices per axis (all axes)");
  build->add_option("--nx", build_args.nx, "Vertices along x");
  build->add_option("--ny", build_args.ny, "Vertices along y");
  build->add_option("--nz", build_args.nz, "Vertices along z");
  build->add_option("--out", build_args.out, "Output graph file");
  build->add_option("--set", build_args.overrides, "Override section.key=value");

  std::string query_file, query_a, query_b;
  auto* query = graph->add_subcommand("query", "Graph distance between goals");
  query->add_option("graph_file", query_file, "Graph file from graph build")
      ->required()->check(CLI::ExistingFile);
  query->add_option("g1", query_a, "First goal x,y,z")->required();
  query->add_option("g2", query_b, "Second goal x,y,z")->required();

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Run a training experiment");
  train->add_option("config", train_args.config, "Experiment config")
      ->required()->check(CLI::ExistingFile);
  train->add_option("--mode", train_args.mode, "g-hgg, hgg or her")
      ->check(CLI::IsMember({"g-hgg", "hgg", "her"}));
  auto* seed_opt = train->add_option("--seed", train_args.seed, "RNG seed");
  train->add_option("--out", train_args.out, "Run output directory");
  train->add_option("--set", train_args.overrides, "Override section.key=value");
  train->add_option("--graph", train_args.graph, "Prebuilt graph file");
  train->add_option("--checkpoint-every", train_args.checkpoint_every,
                    "Checkpoint interval in iterations");
  train->add_flag("--force", train_args.force, "Overwrite an existing run");
  train->add_flag("--wall-clock", train_args.wall_clock,
                  "Record wall-clock seconds in the metrics CSV");
  train->add_flag("--quiet", train_args.quiet, "Suppress progress output");

  std::string eval_dir;
  int eval_episodes = 100;
  std::uint64_t eval_seed = 1;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a trained run");
  evaluate->add_option("run_dir", eval_dir, "Run directory from train")
      ->required()->check(CLI::ExistingDirectory);
  evaluate->add_option("--episodes", eval_episodes, "Evaluation episodes")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", eval_seed, "RNG seed");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Ablation sweep");
  sweep->add_option("config", sweep_args.config, "Experiment config")
      ->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", sweep_args.param, "n or delta_stop")
      ->required()
      ->check(CLI::IsMember({"n", "delta_stop"}));
  sweep->add_option("--values", sweep_args.values, "Comma-separated values")
      ->required()->delimiter(',');
  sweep->add_option("--seeds", sweep_args.seeds, "Comma-separated seeds")->delimiter(',');
  sweep->add_option("--mode", sweep_args.mode, "g-hgg, hgg or her")
      ->check(CLI::IsMember({"g-hgg", "hgg", "her"}));
  sweep->add_option("--out", sweep_args.out, "Sweep output directory")->required();
  sweep->add_option("--set", sweep_args.overrides, "Override section.key=value");
  sweep->add_option("--jobs", sweep_args.jobs, "Parallel worker threads")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> export_dirs;
  std::string export_out;
  auto* export_cmd = app.add_subcommand("export-curves", "Merge run curves");
  export_cmd->add_option("run_dirs", export_dirs, "Run directories")->required();
  export_cmd->add_option("--out", export_out, "Output .csv or .json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  train_args.seed_set = seed_opt->count() > 0;
  try {
    if (build->parsed()) return GraphBuild(build_args);
    if (query->parsed()) return GraphQuery(query_file, query_a, query_b);
    if (train->parsed()) return Train(train_args);
    if (evaluate->parsed()) return EvaluateRun(eval_dir, eval_episodes, eval_seed);
    if (sweep->parsed()) return Sweep(sweep_args);
    if (export_cmd->parsed()) return Export(export_dirs, export_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    return Report(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace hatlas

int main(int argc, char** argv) { return hatlas::Main(argc, argv); }
