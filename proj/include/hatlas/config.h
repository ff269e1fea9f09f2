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

#ifndef HATLAS_CONFIG_H_
#define HATLAS_CONFIG_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "hatlas/env.h"
#include "hatlas/goal_generation.h"
#include "hatlas/goal_graph.h"
#include "hatlas/learner.h"
#include "hatlas/trainer.h"

namespace hatlas {

// Everything a run needs, loaded from one JSON file with sections "env",
// "graph", "hgg", "learner" and "trainer".
struct ExperimentConfig {
  EnvConfig env;
  LatticeSpec lattice;
  HggParams hgg;
  QLearnerConfig learner;
  TrainConfig trainer;
  // The document the structs were parsed from, after overrides.
  nlohmann::json source;
};

// Applies "section.key=value" overrides (value parsed as JSON, falling back
// to a plain string) to a config document. Throws Error(kConfig) on a
// malformed override.
void ApplyOverrides(nlohmann::json& doc, const std::vector<std::string>& overrides);

ExperimentConfig ParseExperimentConfig(const nlohmann::json& doc);
ExperimentConfig LoadExperimentConfig(
    const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace hatlas

#endif  // HATLAS_CONFIG_H_
