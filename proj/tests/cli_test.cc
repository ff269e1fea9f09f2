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


#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

const std::string kCli = HATLAS_CLI_PATH;
const std::string kConfigs = HATLAS_CONFIG_DIR;
const std::string kSmall =
    " --set hgg.num_targets=4 --set hgg.num_episodes=4 --set hgg.pool_size=8"
    " --set trainer.iterations=3 --set trainer.optimization_steps=10"
    " --set trainer.batch_size=8 --set trainer.eval_episodes=3";

struct Result {
  int code = -1;
  std::string out;
};

Result RunCli(const std::string& args) {
  const fs::path log =
      fs::path(::testing::TempDir()) /
      ("hatlas_cli_" +
       std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) +
       ".log");
  const std::string cmd = kCli + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("hatlas_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, Version) {
  const Result r = RunCli("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli("").code, 1);
  EXPECT_EQ(RunCli("frobnicate").code, 1);
  EXPECT_EQ(RunCli("train " + kConfigs + "/demo_obstacle.json --mode ddpg").code, 1);
  EXPECT_EQ(RunCli("sweep " + kConfigs + "/demo_obstacle.json --param n --values '' --out " +
                (dir_ / "s").string())
                .code,
            1);
  EXPECT_EQ(RunCli("sweep " + kConfigs + "/demo_obstacle.json --param n --values 4,x --out " +
                (dir_ / "s").string())
                .code,
            1);
}

TEST_F(CliTest, GraphBuildDemo) {
  const Result r = RunCli("graph build " + kConfigs + "/demo_obstacle.json --out " +
                       (dir_ / "g.bin").string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("64 candidates, 8 excluded, 56 vertices"), std::string::npos)
      << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "g.bin"));

  const Result q = RunCli("graph query " + (dir_ / "g.bin").string() +
                       " 0,0,0 1,1,1");
  EXPECT_EQ(q.code, 0) << q.out;
  EXPECT_NE(q.out.find("d_G"), std::string::npos) << q.out;
}

TEST_F(CliTest, GraphValidationErrors) {
  EXPECT_EQ(RunCli("graph build " + kConfigs + "/demo_obstacle.json --n 1").code, 2);
  const Result coarse = RunCli("graph build " + kConfigs + "/demo_obstacle.json --n 3");
  EXPECT_EQ(coarse.code, 2);
  EXPECT_NE(coarse.out.find("obstacle 0"), std::string::npos) << coarse.out;
  EXPECT_EQ(RunCli("graph build /nonexistent.json").code, 1);
}

TEST_F(CliTest, QueryInsideObstacleIsInfinite) {
  ASSERT_EQ(RunCli("graph build " + kConfigs + "/demo_obstacle.json --out " +
                (dir_ / "g.bin").string())
                .code,
            0);
  const Result q =
      RunCli("graph query " + (dir_ / "g.bin").string() + " 0,0,0 0.5,0.5,0.5");
  EXPECT_EQ(q.code, 0) << q.out;
  EXPECT_NE(q.out.find("inf"), std::string::npos) << q.out;
}

TEST_F(CliTest, TrainIsDeterministicAndGuardsOutput) {
  const std::string base = "train " + kConfigs + "/demo_obstacle.json --seed 4 --quiet" + kSmall;
  ASSERT_EQ(RunCli(base + " --out " + (dir_ / "a").string()).code, 0);
  ASSERT_EQ(RunCli(base + " --out " + (dir_ / "b").string()).code, 0);
  EXPECT_EQ(ReadFile(dir_ / "a" / "metrics.csv"), ReadFile(dir_ / "b" / "metrics.csv"));
  EXPECT_EQ(RunCli(base + " --out " + (dir_ / "a").string()).code, 2);
  EXPECT_EQ(RunCli(base + " --out " + (dir_ / "a").string() + " --force").code, 0);

  const Result eval = RunCli("evaluate " + (dir_ / "a").string() + " --episodes 5");
  EXPECT_EQ(eval.code, 0) << eval.out;
  EXPECT_NE(eval.out.find("success"), std::string::npos) << eval.out;

  const Result curves = RunCli("export-curves " + (dir_ / "a").string() + " " +
                            (dir_ / "b").string() + " --out " +
                            (dir_ / "curves.csv").string());
  EXPECT_EQ(curves.code, 0) << curves.out;
  EXPECT_TRUE(fs::exists(dir_ / "curves.csv"));
}

TEST_F(CliTest, TrainValidationErrors) {
  const std::string base = "train " + kConfigs + "/demo_obstacle.json --quiet";
  EXPECT_EQ(RunCli(base + " --set graph.n=3 --out " + (dir_ / "x").string()).code, 2);
  EXPECT_EQ(RunCli(base + " --set hgg.delta_stop=3 --out " + (dir_ / "y").string()).code, 2);
  EXPECT_EQ(RunCli("train /nonexistent.json").code, 1);
}

TEST_F(CliTest, ExportWithoutRuns) {
  EXPECT_EQ(RunCli("export-curves " + (dir_ / "none").string() + " --out " +
                (dir_ / "c.csv").string())
                .code,
            1);
}

TEST_F(CliTest, Sweep) {
  const Result r = RunCli("sweep " + kConfigs + "/demo_obstacle.json --param delta_stop"
                       " --values 0,1 --seeds 1 --mode hgg --out " +
                       (dir_ / "sweep").string() + kSmall);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "sweep" / "aggregate.csv"));
}

}  // namespace
