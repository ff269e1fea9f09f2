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

#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"
#include "hatlas/error.h"

namespace hatlas {
namespace {

using nlohmann::json;

std::string ConfigPath(const std::string& name) {
  return std::string(HATLAS_CONFIG_DIR) + "/" + name;
}

json Minimal() {
  return json::parse(R"({
    "env": {
      "workspace": {"min": [0, 0, 0], "max": [1, 1, 1]},
      "initial_object_region": {"min": [0, 0, 0], "max": [0.1, 0.1, 0.1]},
      "targets": {"region": {"min": [0.9, 0.9, 0.9], "max": [1, 1, 1]}}
    }
  })");
}

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

TEST(ConfigTest, ShippedConfigsLoad) {
  for (const char* name : {"labyrinth_push.json", "pick_obstacle.json",
                           "pick_no_obstacle.json", "pick_and_throw.json",
                           "demo_obstacle.json"}) {
    SCOPED_TRACE(name);
    const ExperimentConfig cfg = LoadExperimentConfig(ConfigPath(name));
    EXPECT_FALSE(cfg.env.name.empty());
    EXPECT_TRUE(CheckDensity(cfg.env.GraphSpace(), cfg.lattice));
  }
}

TEST(ConfigTest, LabyrinthFields) {
  const ExperimentConfig cfg = LoadExperimentConfig(ConfigPath("labyrinth_push.json"));
  EXPECT_EQ(cfg.env.kind, TaskKind::kPush);
  EXPECT_TRUE(cfg.env.planar);
  EXPECT_EQ(cfg.env.obstacles.size(), 2u);
  EXPECT_EQ(cfg.lattice.n_x, 17);
  EXPECT_EQ(cfg.lattice.n_z, 2);
  EXPECT_TRUE(cfg.learner.planar);
  EXPECT_FALSE(cfg.learner.grip_enabled);
  EXPECT_EQ(cfg.hgg.eps_close, cfg.env.success_threshold);
  EXPECT_EQ(cfg.learner.grid.lo(), cfg.env.workspace.lo());
}

TEST(ConfigTest, PickAndThrowHasEightGoals) {
  const ExperimentConfig cfg = LoadExperimentConfig(ConfigPath("pick_and_throw.json"));
  EXPECT_EQ(cfg.env.targets.points.size(), 8u);
  EXPECT_TRUE(cfg.env.release_carry);
  EXPECT_TRUE(cfg.learner.grip_enabled);
}

TEST(ConfigTest, Defaults) {
  const ExperimentConfig cfg = ParseExperimentConfig(Minimal());
  EXPECT_EQ(cfg.trainer.mode, TrainMode::kGraphHgg);
  EXPECT_EQ(cfg.hgg.num_targets, HggParams().num_targets);
  EXPECT_EQ(cfg.env.graph_bounds.hi(), cfg.env.workspace.hi());
  EXPECT_EQ(cfg.learner.seed, cfg.trainer.seed);
}

TEST(ConfigTest, Overrides) {
  json doc = Minimal();
  ApplyOverrides(doc, {"graph.n=[3,4,5]", "trainer.seed=9", "trainer.mode=her",
                       "hgg.delta_stop=0.5", "env.planar=true"});
  const ExperimentConfig cfg = ParseExperimentConfig(doc);
  EXPECT_EQ(cfg.lattice.n_y, 4);
  EXPECT_EQ(cfg.trainer.seed, 9u);
  EXPECT_EQ(cfg.learner.seed, 9u);
  EXPECT_EQ(cfg.trainer.mode, TrainMode::kHer);
  EXPECT_EQ(cfg.hgg.delta_stop, 0.5);
  EXPECT_TRUE(cfg.env.planar);
  EXPECT_EQ(cfg.source["trainer"]["mode"], "her");
}

TEST(ConfigTest, ScalarLatticeSize) {
  json doc = Minimal();
  doc["graph"]["n"] = 6;
  const ExperimentConfig cfg = ParseExperimentConfig(doc);
  EXPECT_EQ(cfg.lattice.n_x, 6);
  EXPECT_EQ(cfg.lattice.n_z, 6);
}

TEST(ConfigTest, MalformedOverride) {
  json doc = Minimal();
  EXPECT_EQ(KindOf([&] { ApplyOverrides(doc, {"novalue"}); }), ErrorKind::kConfig);
  EXPECT_EQ(KindOf([&] { ApplyOverrides(doc, {"=3"}); }), ErrorKind::kConfig);
}

TEST(ConfigTest, ValidationErrors) {
  json doc = Minimal();
  doc["env"].erase("workspace");
  EXPECT_EQ(KindOf([&] { ParseExperimentConfig(doc); }), ErrorKind::kConfig);

  doc = Minimal();
  doc["env"]["kind"] = "throw";
  EXPECT_EQ(KindOf([&] { ParseExperimentConfig(doc); }), ErrorKind::kConfig);

  doc = Minimal();
  doc["graph"]["n"] = 1;
  EXPECT_EQ(KindOf([&] { ParseExperimentConfig(doc); }),
            ErrorKind::kInvalidArgument);

  doc = Minimal();
  doc["hgg"]["delta_stop"] = 2.0;
  EXPECT_EQ(KindOf([&] { ParseExperimentConfig(doc); }), ErrorKind::kConfig);

  doc = Minimal();
  doc["trainer"]["batch_size"] = "many";
  EXPECT_EQ(KindOf([&] { ParseExperimentConfig(doc); }), ErrorKind::kConfig);

  doc = Minimal();
  doc["trainer"]["mode"] = "ddpg";
  EXPECT_EQ(KindOf([&] { ParseExperimentConfig(doc); }), ErrorKind::kConfig);
}

TEST(ConfigTest, FileErrors) {
  EXPECT_EQ(KindOf([] { LoadExperimentConfig("/nonexistent/config.json"); }),
            ErrorKind::kIo);
  const auto path =
      std::filesystem::path(::testing::TempDir()) / "broken_config.json";
  std::ofstream(path) << "{ not json";
  EXPECT_EQ(KindOf([&] { LoadExperimentConfig(path.string()); }),
            ErrorKind::kConfig);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace hatlas
