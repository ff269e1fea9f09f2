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

#include "hatlas/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "hatlas/binary_io.h"
#include "hatlas/error.h"
#include "hatlas/learner.h"

namespace hatlas {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

json Vec3Json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

}  // namespace

std::string GraphCacheKey(const ExperimentConfig& config) {
  const AccessibleSpace space = config.env.GraphSpace();
  std::ostringstream os;
  os.precision(17);
  os << "v1;" << space.bounds().lo().transpose() << ";"
     << space.bounds().hi().transpose() << ";";
  std::vector<std::string> obstacles;
  for (const Cuboid& c : space.obstacles()) {
    std::ostringstream o;
    o.precision(17);
    o << c.center().transpose() << "/" << c.half_extents().transpose();
    obstacles.push_back(o.str());
  }
  std::sort(obstacles.begin(), obstacles.end());
  for (const auto& o : obstacles) os << o << ";";
  os << config.lattice.n_x << "x" << config.lattice.n_y << "x"
     << config.lattice.n_z;
  Fnv1a h;
  h.Update(os.str());
  return "graph-" + HexDigest(h.digest()) + ".bin";
}

GraphBundle ObtainGraph(const ExperimentConfig& config,
                        const std::string& explicit_path) {
  if (!explicit_path.empty()) return LoadGraphBundle(explicit_path);
  fs::path cached;
  if (const char* dir = std::getenv(kCacheEnvVar); dir != nullptr && *dir) {
    cached = fs::path(dir) / GraphCacheKey(config);
    if (fs::exists(cached)) {
      try {
        return LoadGraphBundle(cached.string());
      } catch (const Error&) {
        // Unreadable cache entry: rebuild below and overwrite it.
      }
    }
  }
  auto graph = std::make_shared<const GoalGraph>(
      GoalGraph::Build(config.env.GraphSpace(), config.lattice));
  auto table = std::make_shared<const DistanceTable>(DistanceTable::Compute(*graph));
  if (!cached.empty()) {
    fs::create_directories(cached.parent_path());
    const fs::path tmp = cached.string() + ".tmp" +
                         std::to_string(std::hash<std::thread::id>{}(
                             std::this_thread::get_id()));
    SaveGraphBundle(tmp.string(), *graph, *table);
    fs::rename(tmp, cached);
  }
  return {std::move(graph), std::move(table)};
}

std::string FormatMetricsRow(const IterationMetrics& m, bool wall_clock) {
  std::ostringstream os;
  os << m.iteration << "," << FormatNumber(m.success_rate) << ","
     << FormatNumber(m.mean_graph_distance) << ","
     << FormatNumber(m.mean_euclidean_distance) << "," << (m.stopped ? 1 : 0)
     << "," << FormatNumber(wall_clock ? m.seconds : 0.0);
  return os.str();
}

RunResult RunTraining(const ExperimentConfig& config,
                      const RunOptions& options) {
  const TrainMode mode = config.trainer.mode;
  const bool to_disk = !options.out_dir.empty();
  const fs::path out(options.out_dir);
  if (to_disk) {
    if (fs::exists(out / "manifest.json") && !options.force) {
      throw Error(ErrorKind::kInvalidArgument,
                  "output directory " + out.string() +
                      " already holds a run (use --force to overwrite)");
    }
    fs::create_directories(out);
  }

  std::shared_ptr<const GraphMetric> graph;
  RunResult result;
  if (mode != TrainMode::kHer) {
    GraphBundle bundle = ObtainGraph(config, options.graph_path);
    graph = std::make_shared<const GraphMetric>(bundle.graph, bundle.table);
    result.graph_hash = bundle.graph->Hash();
  }

  std::ofstream metrics_csv;
  std::ofstream selections_log;
  if (to_disk) {
    json source = config.source;
    source["trainer"]["mode"] = TrainModeName(mode);
    source["trainer"]["seed"] = config.trainer.seed;
    json manifest = {
        {"artifact", "hindsight-atlas"},
        {"version", kVersion},
        {"mode", TrainModeName(mode)},
        {"seed", config.trainer.seed},
        {"graph_hash",
         graph ? json(HexDigest(result.graph_hash)) : json(nullptr)},
        {"config", source},
        {"outputs",
         {{"metrics", "metrics.csv"},
          {"selections", "selections.jsonl"},
          {"checkpoint", "checkpoint"}}},
    };
    WriteTextFile(out / "manifest.json", manifest.dump(2) + "\n");
    metrics_csv.open(out / "metrics.csv", std::ios::trunc);
    metrics_csv << kMetricsHeader << "\n";
    selections_log.open(out / "selections.jsonl", std::ios::trunc);
    if (!metrics_csv || !selections_log) {
      throw Error(ErrorKind::kIo, "cannot open outputs in " + out.string());
    }
  }

  Trainer trainer(Environment(config.env), config.trainer, config.hgg,
                  std::make_unique<DiscretizedQLearner>(config.learner),
                  mode == TrainMode::kHer ? nullptr : graph);
  if (to_disk) {
    trainer.SetSelectionObserver([&](int iteration, const GoalSelection& sel) {
      for (const MatchedPair& m : sel.matched) {
        json line = {
            {"iteration", iteration},
            {"metric", mode == TrainMode::kGraphHgg ? "graph" : "euclidean"},
            {"target", Vec3Json(m.target.goal)},
            {"hindsight_goal", Vec3Json(m.hindsight_goal)},
            {"trajectory", m.trajectory_id},
            {"t", m.t},
            {"cost", m.cost},
        };
        selections_log << line.dump() << "\n";
      }
    });
  }

  for (int it = 0; it < config.trainer.iterations; ++it) {
    IterationMetrics m;
    try {
      m = trainer.RunIteration();
    } catch (const Error&) {
      if (to_disk) trainer.SaveCheckpoint((out / "checkpoint").string());
      throw;
    }
    if (m.stopped && result.stop_iteration == 0) {
      result.stop_iteration = m.iteration;
      result.stop_close_fraction = m.close_fraction;
    }
    result.metrics.push_back(m);
    if (to_disk) {
      metrics_csv << FormatMetricsRow(m, options.wall_clock) << "\n";
      metrics_csv.flush();
      if (options.checkpoint_every > 0 &&
          m.iteration % options.checkpoint_every == 0) {
        trainer.SaveCheckpoint((out / "checkpoint").string());
      }
    }
    if (options.on_iteration) options.on_iteration(m);
  }
  if (to_disk) trainer.SaveCheckpoint((out / "checkpoint").string());
  if (graph) result.graph_queries = graph->query_count();
  return result;
}

double Quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const auto hi = static_cast<size_t>(std::ceil(pos));
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SweepParam ParseSweepParam(const std::string& name) {
  if (name == "n") return SweepParam::kVertexCount;
  if (name == "delta_stop") return SweepParam::kDeltaStop;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown sweep parameter '" + name + "' (expected n or delta_stop)");
}

SweepResult RunSweep(const std::string& config_path,
                     const std::vector<std::string>& overrides,
                     SweepParam param, const std::vector<double>& values,
                     const std::vector<std::uint64_t>& seeds, TrainMode mode,
                     const std::string& out_dir, int jobs) {
  if (values.empty() || seeds.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "sweep needs at least one value and one seed");
  }
  const ExperimentConfig base = LoadExperimentConfig(config_path, overrides);
  const char* param_name = param == SweepParam::kVertexCount ? "n" : "delta_stop";

  SweepResult result;
  for (double v : values) {
    for (std::uint64_t s : seeds) result.cells.push_back({v, s, false, "", {}});
  }

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < result.cells.size(); i = next++) {
      SweepCell& cell = result.cells[i];
      std::vector<std::string> cell_overrides = overrides;
      std::ostringstream value_text;
      if (param == SweepParam::kVertexCount) {
        const int n = static_cast<int>(std::lround(cell.value));
        // Planar axes (2 vertices) keep their count.
        auto axis = [&](int base_count) { return base_count == 2 ? 2 : n; };
        value_text << n;
        cell_overrides.push_back(
            "graph.n=[" + std::to_string(axis(base.lattice.n_x)) + "," +
            std::to_string(axis(base.lattice.n_y)) + "," +
            std::to_string(axis(base.lattice.n_z)) + "]");
      } else {
        value_text << cell.value;
        cell_overrides.push_back("hgg.delta_stop=" + FormatNumber(cell.value));
      }
      cell_overrides.push_back("trainer.seed=" + std::to_string(cell.seed));
      cell_overrides.push_back(std::string("trainer.mode=\"") +
                               TrainModeName(mode) + "\"");
      try {
        const ExperimentConfig cfg =
            LoadExperimentConfig(config_path, cell_overrides);
        RunOptions options;
        options.force = true;
        if (!out_dir.empty()) {
          options.out_dir = (fs::path(out_dir) /
                             (std::string(param_name) + "-" + value_text.str()) /
                             ("seed-" + std::to_string(cell.seed)))
                                .string();
        }
        const RunResult run = RunTraining(cfg, options);
        for (const auto& m : run.metrics) cell.success.push_back(m.success_rate);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(result.cells.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ostringstream cells;
    cells << "param,value,seed,status,final_success,error\n";
    for (const SweepCell& c : result.cells) {
      std::string error = c.error;
      std::replace(error.begin(), error.end(), ',', ';');
      std::replace(error.begin(), error.end(), '\n', ' ');
      cells << param_name << "," << FormatNumber(c.value) << "," << c.seed
            << "," << (c.ok ? "ok" : "failed") << ","
            << (c.ok && !c.success.empty() ? FormatNumber(c.success.back())
                                           : "nan")
            << "," << error << "\n";
    }
    WriteTextFile(fs::path(out_dir) / "cells.csv", cells.str());

    std::ostringstream agg;
    agg << "param,value,iteration,runs,median_success,q25_success,q75_success\n";
    for (double v : values) {
      size_t iterations = 0;
      for (const SweepCell& c : result.cells) {
        if (c.value == v && c.ok) iterations = std::max(iterations, c.success.size());
      }
      for (size_t it = 0; it < iterations; ++it) {
        std::vector<double> at;
        for (const SweepCell& c : result.cells) {
          if (c.value == v && c.ok && it < c.success.size()) {
            at.push_back(c.success[it]);
          }
        }
        agg << param_name << "," << FormatNumber(v) << "," << it + 1 << ","
            << at.size() << "," << FormatNumber(Quantile(at, 0.5)) << ","
            << FormatNumber(Quantile(at, 0.25)) << ","
            << FormatNumber(Quantile(at, 0.75)) << "\n";
      }
    }
    WriteTextFile(fs::path(out_dir) / "aggregate.csv", agg.str());
  }
  return result;
}

namespace {

struct RunCurve {
  std::string run;
  std::string mode;
  std::vector<std::pair<int, double>> success;
};

RunCurve ReadRunCurve(const fs::path& dir) {
  RunCurve curve;
  curve.run = dir.filename().string();
  if (curve.run.empty()) curve.run = dir.parent_path().filename().string();
  std::ifstream manifest_in(dir / "manifest.json");
  if (!manifest_in) throw Error(ErrorKind::kIo, "missing manifest.json");
  const json manifest = json::parse(manifest_in, nullptr, false);
  if (manifest.is_discarded() || !manifest.contains("mode")) {
    throw Error(ErrorKind::kIo, "corrupt manifest.json");
  }
  curve.mode = manifest["mode"].get<std::string>();
  std::ifstream csv(dir / "metrics.csv");
  if (!csv) throw Error(ErrorKind::kIo, "missing metrics.csv");
  std::string line;
  if (!std::getline(csv, line) || line != kMetricsHeader) {
    throw Error(ErrorKind::kIo, "metrics.csv has an unexpected header");
  }
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string iteration, success;
    if (!std::getline(row, iteration, ',') || !std::getline(row, success, ',')) {
      throw Error(ErrorKind::kIo, "malformed metrics row '" + line + "'");
    }
    try {
      curve.success.emplace_back(std::stoi(iteration), std::stod(success));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kIo, "malformed metrics row '" + line + "'");
    }
  }
  if (curve.success.empty()) throw Error(ErrorKind::kIo, "metrics.csv is empty");
  return curve;
}

}  // namespace

int ExportCurves(const std::vector<std::string>& run_dirs,
                 const std::string& out_path,
                 std::vector<std::string>& warnings) {
  std::vector<RunCurve> curves;
  for (const std::string& dir : run_dirs) {
    try {
      curves.push_back(ReadRunCurve(dir));
    } catch (const std::exception& e) {
      warnings.push_back("skipping " + dir + ": " + e.what());
    }
  }
  if (curves.empty()) return 0;

  // Disambiguate repeated run names.
  std::map<std::string, int> seen;
  for (RunCurve& c : curves) {
    const int k = seen[c.run]++;
    if (k > 0) c.run += "#" + std::to_string(k);
  }

  std::map<std::pair<std::string, int>, std::vector<double>> by_mode;
  for (const RunCurve& c : curves) {
    for (const auto& [it, s] : c.success) by_mode[{c.mode, it}].push_back(s);
  }

  const bool as_json = fs::path(out_path).extension() == ".json";
  json records = json::array();
  std::ostringstream csv;
  csv << "run,mode,iteration,success_rate,mode_median,mode_q25,mode_q75\n";
  for (const RunCurve& c : curves) {
    for (const auto& [it, s] : c.success) {
      const auto& all = by_mode[{c.mode, it}];
      const double median = Quantile(all, 0.5);
      const double q25 = Quantile(all, 0.25);
      const double q75 = Quantile(all, 0.75);
      if (as_json) {
        records.push_back({{"run", c.run},
                           {"mode", c.mode},
                           {"iteration", it},
                           {"success_rate", s},
                           {"mode_median", median},
                           {"mode_q25", q25},
                           {"mode_q75", q75}});
      } else {
        csv << c.run << "," << c.mode << "," << it << "," << FormatNumber(s)
            << "," << FormatNumber(median) << "," << FormatNumber(q25) << ","
            << FormatNumber(q75) << "\n";
      }
    }
  }
  if (!out_path.empty()) {
    if (fs::path(out_path).has_parent_path()) {
      fs::create_directories(fs::path(out_path).parent_path());
    }
    WriteTextFile(out_path, as_json ? records.dump(2) + "\n" : csv.str());
  }
  return static_cast<int>(curves.size());
}

}  // namespace hatlas
