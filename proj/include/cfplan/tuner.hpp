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

#include "cfplan/bo.hpp"
#include "cfplan/cost.hpp"
#include "cfplan/params.hpp"
#include "cfplan/planner.hpp"
#include "cfplan/scene.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cfplan {

/// Gains in [0, 200], detection radius in [0.05, 1.0] m.
BoundsBox default_bounds(int n_agents = 7);

struct LabelingConfig {
  PlannerConfig planner;
  AgentCostWeights agent_weights;
  TrajectoryCostWeights trajectory_weights;
  BoundsBox bounds = default_bounds();
  BoConfig bo;
  std::size_t cloud_points = 2500;
  double cloud_density = 400.0;  // points per square meter of obstacle surface

  void validate() const;
};

/// A plan counts as successful when it reaches the goal without touching an obstacle.
inline bool plan_succeeded(const PlanResult& r) { return r.reached && r.min_clearance > 0.0; }

/// The tuner's objective for one scene: trajectory cost of the executed plan.
double plan_cost(const Scene& scene, const ParamVector& p, const LabelingConfig& cfg);

struct TuningResult {
  ParamVector p_star;
  double best_cost = 0.0;
  ObservationSet observations;
  PlanResult plan;  // re-execution of p_star
};

TuningResult tune_scene(const Scene& scene, const LabelingConfig& cfg);

struct LabeledSample {
  int scene_id = 0;
  PointCloud cloud;
  ParamVector p_star;
  double best_cost = 0.0;
  bool reached = true;
};

/// Tunes `scene` and returns a sample only when the tuned plan succeeds.
std::optional<LabeledSample> label_scene(const Scene& scene, const LabelingConfig& cfg, int scene_id = 0);

struct SceneJob {
  int scene_id = 0;
  std::uint64_t seed = 0;
  Scene scene;
};

struct SceneOutcome {
  int scene_id = 0;
  std::uint64_t seed = 0;
  bool success = false;
  double best_cost = 0.0;
  double wall_time_s = 0.0;
};

struct DatasetSummary {
  int n_attempted = 0;
  int n_succeeded = 0;
  std::vector<std::uint64_t> seeds;
  double wall_time_s = 0.0;
  std::vector<SceneOutcome> scenes;
};

/// Labels every job (in parallel when `threads` > 1) and writes successes to
/// `dataset_out` as JSON lines, in job order.
DatasetSummary label_scenes(const std::vector<SceneJob>& jobs, const LabelingConfig& cfg,
                            std::ostream& dataset_out, int threads = 1);

/// Randomizes `n_scenes` scenes (scene i uses mix_seed(seed, i)), labels them,
/// and writes the dataset and a JSON summary.
DatasetSummary build_dataset(int n_scenes, std::uint64_t seed, const SceneRandomizerConfig& scene_cfg,
                             const LabelingConfig& cfg, const std::string& dataset_path,
                             const std::string& summary_path, int threads = 1);

}  // namespace cfplan
