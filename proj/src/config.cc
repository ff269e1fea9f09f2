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

#include "hatlas/config.h"

#include <fstream>

#include "hatlas/error.h"

namespace hatlas {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& what) {
  throw Error(ErrorKind::kConfig, what);
}

Vec3 ReadVec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) Fail(where + ": expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Bounds3 ReadBounds(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max")) {
    Fail(where + ": expected {\"min\": [...], \"max\": [...]}");
  }
  return Bounds3::FromCorners(ReadVec3(j["min"], where + ".min"),
                              ReadVec3(j["max"], where + ".max"));
}

template <typename T>
void Maybe(const json& section, const char* key, T& out) {
  if (section.contains(key) && !section[key].is_null()) {
    out = section[key].get<T>();
  }
}

EnvConfig ReadEnv(const json& j) {
  EnvConfig env;
  Maybe(j, "name", env.name);
  if (j.contains("kind")) {
    const auto kind = j["kind"].get<std::string>();
    if (kind == "push") {
      env.kind = TaskKind::kPush;
    } else if (kind == "pick") {
      env.kind = TaskKind::kPick;
    } else {
      Fail("env.kind must be \"push\" or \"pick\"");
    }
  }
  if (!j.contains("workspace")) Fail("env.workspace is required");
  env.workspace = ReadBounds(j["workspace"], "env.workspace");
  env.graph_bounds = j.contains("graph_bounds")
                         ? ReadBounds(j["graph_bounds"], "env.graph_bounds")
                         : env.workspace;
  if (!j.contains("initial_object_region")) {
    Fail("env.initial_object_region is required");
  }
  env.initial_object_region =
      ReadBounds(j["initial_object_region"], "env.initial_object_region");
  if (j.contains("agent_offset")) {
    env.agent_offset = ReadVec3(j["agent_offset"], "env.agent_offset");
  }
  if (j.contains("obstacles")) {
    for (const json& o : j["obstacles"]) {
      if (!o.contains("center") || !o.contains("half_extents")) {
        Fail("env.obstacles[]: expected center and half_extents");
      }
      env.obstacles.emplace_back(ReadVec3(o["center"], "obstacle.center"),
                                 ReadVec3(o["half_extents"],
                                          "obstacle.half_extents"));
    }
  }
  if (!j.contains("targets")) Fail("env.targets is required");
  const json& t = j["targets"];
  if (t.contains("region")) {
    env.targets.region = ReadBounds(t["region"], "env.targets.region");
  }
  if (t.contains("points")) {
    for (const json& p : t["points"]) {
      env.targets.points.push_back(ReadVec3(p, "env.targets.points[]"));
    }
  }
  Maybe(j, "success_threshold", env.success_threshold);
  Maybe(j, "horizon", env.horizon);
  Maybe(j, "action_scale", env.action_scale);
  Maybe(j, "grab_radius", env.grab_radius);
  Maybe(j, "planar", env.planar);
  Maybe(j, "release_carry", env.release_carry);
  env.Validate();
  return env;
}

}  // namespace

void ApplyOverrides(json& doc, const std::vector<std::string>& overrides) {
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      Fail("override '" + item + "' is not of the form key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) value = text;
    std::string pointer = "/" + key;
    for (char& c : pointer) {
      if (c == '.') c = '/';
    }
    try {
      doc[json::json_pointer(pointer)] = value;
    } catch (const json::exception& e) {
      Fail("override '" + item + "': " + e.what());
    }
  }
}

ExperimentConfig ParseExperimentConfig(const json& doc) {
  ExperimentConfig cfg;
  cfg.source = doc;
  try {
    if (!doc.is_object() || !doc.contains("env")) Fail("missing env section");
    cfg.env = ReadEnv(doc["env"]);

    const json graph = doc.value("graph", json::object());
    if (graph.contains("n")) {
      const json& n = graph["n"];
      if (n.is_number_integer()) {
        cfg.lattice = {n.get<int>(), n.get<int>(), n.get<int>()};
      } else if (n.is_array() && n.size() == 3) {
        cfg.lattice = {n[0].get<int>(), n[1].get<int>(), n[2].get<int>()};
      } else {
        Fail("graph.n must be an integer or [n_x, n_y, n_z]");
      }
    }

    const json hgg = doc.value("hgg", json::object());
    cfg.hgg.eps_close = cfg.env.success_threshold;
    Maybe(hgg, "c", cfg.hgg.c);
    Maybe(hgg, "lipschitz", cfg.hgg.lipschitz);
    Maybe(hgg, "num_targets", cfg.hgg.num_targets);
    Maybe(hgg, "num_episodes", cfg.hgg.num_episodes);
    Maybe(hgg, "delta_stop", cfg.hgg.delta_stop);
    Maybe(hgg, "eps_close", cfg.hgg.eps_close);
    Maybe(hgg, "pool_size", cfg.hgg.pool_size);

    const json learner = doc.value("learner", json::object());
    cfg.learner.grid = cfg.env.workspace;
    cfg.learner.planar = cfg.env.planar;
    cfg.learner.grip_enabled = cfg.env.kind == TaskKind::kPick;
    Maybe(learner, "resolution", cfg.learner.resolution);
    Maybe(learner, "gamma", cfg.learner.gamma);
    Maybe(learner, "learning_rate", cfg.learner.learning_rate);
    Maybe(learner, "epsilon", cfg.learner.epsilon);
    Maybe(learner, "jitter", cfg.learner.jitter);

    const json trainer = doc.value("trainer", json::object());
    Maybe(trainer, "iterations", cfg.trainer.iterations);
    Maybe(trainer, "optimization_steps", cfg.trainer.optimization_steps);
    Maybe(trainer, "batch_size", cfg.trainer.batch_size);
    Maybe(trainer, "eval_episodes", cfg.trainer.eval_episodes);
    Maybe(trainer, "buffer_capacity", cfg.trainer.buffer_capacity);
    Maybe(trainer, "k_future", cfg.trainer.k_future);
    Maybe(trainer, "full_horizon_exploration",
          cfg.trainer.full_horizon_exploration);
    Maybe(trainer, "seed", cfg.trainer.seed);
    if (trainer.contains("mode")) {
      cfg.trainer.mode = ParseTrainMode(trainer["mode"].get<std::string>());
    }
    cfg.learner.seed = cfg.trainer.seed;
  } catch (const json::exception& e) {
    Fail(std::string("config: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw;
    Fail(std::string("config: ") + e.what());
  }
  cfg.lattice.Validate();
  cfg.hgg.Validate();
  cfg.learner.Validate();
  cfg.trainer.Validate();
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::string& path,
                                      const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open config " + path);
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false,
                         /*ignore_comments=*/true);
  if (doc.is_discarded()) Fail("config " + path + " is not valid JSON");
  ApplyOverrides(doc, overrides);
  return ParseExperimentConfig(doc);
}

}  // namespace hatlas
