// Copyright 2026 The cfplan Authors
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

#pragma once

#include "cfplan/io.hpp"
#include "cfplan/scene.hpp"
#include "cfplan/tuner.hpp"

#include <string>

namespace cfplan {

/// Everything a CLI run needs. Every section is optional in the JSON file;
/// missing fields keep their defaults and unknown keys are rejected.
struct RunConfig {
  LabelingConfig labeling;
  SceneRandomizerConfig scene;
  int threads = 1;
  int knn_k = 3;

  void validate() const;
};

RunConfig run_config_from_json(const Json& j);
Json run_config_to_json(const RunConfig& cfg);
RunConfig load_run_config(const std::string& path);

}  // namespace cfplan
