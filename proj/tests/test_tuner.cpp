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

#include "doctest.h"

#include "cfplan/io.hpp"
#include "cfplan/tuner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cfplan;

namespace {

LabelingConfig quick_config() {
  LabelingConfig cfg;
  cfg.bo.n_init = 3;
  cfg.bo.n_iter = 2;
  cfg.bo.acquisition.n_quasi_random = 128;
  cfg.bo.acquisition.n_perturbations = 32;
  cfg.planner.max_steps = 600;
  cfg.cloud_points = 200;
  return cfg;
}

Scene empty_scene() {
  Scene s;
  s.workspace = {Vec3(-1, -1, -1), Vec3(1, 1, 1)};
  s.start = Vec3(0, 0, 0);
  s.goal = Vec3(0.3, 0.2, 0.1);
  return s;
}

}  // namespace

TEST_CASE("default_bounds") {
  const BoundsBox b = default_bounds();
  CHECK(b.dimension() == 36);
  for (int i = 0; i < 35; ++i) {
    CHECK(b.low[i] == 0.0);
    CHECK(b.high[i] == 200.0);
  }
  CHECK(b.low[35] == 0.05);
  CHECK(b.high[35] == 1.0);
  CHECK(default_bounds(3).dimension() == 16);
}

TEST_CASE("label_scene on an empty scene produces a sample") {
  LabelingConfig cfg;
  cfg.cloud_points = 200;
  const Scene s = empty_scene();
  const auto sample = label_scene(s, cfg, 4);
  REQUIRE(sample.has_value());
  CHECK(sample->reached);
  CHECK(sample->scene_id == 4);
  CHECK(sample->cloud.size() == cfg.cloud_points);
  CHECK(sample->p_star.size() == 36);
  CHECK(cfg.bounds.contains(sample->p_star.values()));
  CHECK(sample->best_cost == doctest::Approx(plan_cost(s, sample->p_star, cfg)));

  const TuningResult t = tune_scene(s, cfg);
  CHECK(t.observations.size() == 56);
  CHECK(t.plan.reached);
  CHECK((t.plan.trajectory.final_position() - s.goal).norm() <= cfg.planner.goal_tolerance);
}

TEST_CASE("label_scene rejects an unreachable goal") {
  LabelingConfig cfg = quick_config();
  cfg.planner.max_steps = 200;
  Scene s = empty_scene();
  s.goal = Vec3(0.9, 0.9, 0.9);  // farther than 200 steps at v_max allow
  CHECK(!label_scene(s, cfg).has_value());
}

TEST_CASE("label_scenes writes successes in job order") {
  const LabelingConfig cfg = quick_config();
  std::vector<SceneJob> jobs;
  for (int i = 0; i < 3; ++i) {
    Scene s = empty_scene();
    s.goal = Vec3(0.1 * (i + 1), 0.0, 0.0);
    jobs.push_back({i, static_cast<std::uint64_t>(100 + i), s});
  }
  Scene far = empty_scene();
  far.goal = Vec3(0.95, 0.95, 0.95);
  jobs.push_back({3, 103, far});

  std::ostringstream a, b;
  const DatasetSummary sa = label_scenes(jobs, cfg, a, 1);
  const DatasetSummary sb = label_scenes(jobs, cfg, b, 2);
  CHECK(a.str() == b.str());
  CHECK(sa.n_attempted == 4);
  REQUIRE(sa.scenes.size() == 4);
  CHECK(sa.seeds == std::vector<std::uint64_t>{100, 101, 102, 103});
  std::istringstream in(a.str());
  std::string line;
  int rows = 0, prev = -1;
  while (std::getline(in, line)) {
    const LabeledSample s = sample_from_json(Json::parse(line));
    CHECK(s.scene_id > prev);
    prev = s.scene_id;
    ++rows;
  }
  CHECK(rows == sa.n_succeeded);
  for (int i = 0; i < 3; ++i) CHECK(sa.scenes[static_cast<std::size_t>(i)].success);
}

TEST_CASE("build_dataset is deterministic") {
  LabelingConfig cfg = quick_config();
  cfg.bo.n_init = 2;
  cfg.bo.n_iter = 0;
  cfg.planner.max_steps = 150;
  SceneRandomizerConfig scfg;
  scfg.min_floating = 1;
  scfg.max_floating = 1;
  const auto dir = std::filesystem::temp_directory_path() / "cfplan_test_build";
  std::filesystem::create_directories(dir);
  auto read = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const DatasetSummary s1 =
      build_dataset(2, 9, scfg, cfg, (dir / "a.jsonl").string(), (dir / "a.json").string());
  const DatasetSummary s2 =
      build_dataset(2, 9, scfg, cfg, (dir / "b.jsonl").string(), (dir / "b.json").string());
  CHECK(read(dir / "a.jsonl") == read(dir / "b.jsonl"));
  CHECK(s1.n_succeeded == s2.n_succeeded);
  CHECK(s1.n_attempted == 2);
  const Json summary = read_json((dir / "a.json").string());
  CHECK(summary.at("scenes").size() == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("LabelingConfig validation") {
  LabelingConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.bounds = default_bounds(3);
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = LabelingConfig{};
  cfg.cloud_points = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}
