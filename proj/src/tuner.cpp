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

#include "cfplan/tuner.hpp"

#include "cfplan/io.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

namespace cfplan {

BoundsBox default_bounds(int n_agents) {
  const int d = ParamVector::dimension(n_agents);
  Eigen::VectorXd lo = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, 200.0);
  lo[d - 1] = 0.05;
  hi[d - 1] = 1.0;
  return BoundsBox(lo, hi);
}

void LabelingConfig::validate() const {
  planner.validate();
  agent_weights.validate();
  trajectory_weights.validate();
  if (bounds.dimension() != ParamVector::dimension(planner.n_agents))
    throw InvalidArgument("labeling: bounds dimension must be 5*n_agents + 1");
  if ((bounds.low.head(bounds.dimension() - 1).array() < 0.0).any() || !(bounds.low[bounds.dimension() - 1] > 0.0))
    throw InvalidArgument("labeling: gain bounds must be >= 0 and r_d bounds > 0");
  if (bo.n_init < 2 || bo.n_iter < 0) throw InvalidArgument("labeling: n_init >= 2 and n_iter >= 0 required");
  if (cloud_points == 0) throw InvalidArgument("labeling: cloud_points must be >= 1");
}

double plan_cost(const Scene& scene, const ParamVector& p, const LabelingConfig& cfg) {
  const PlanResult r = execute(scene, p, cfg.planner, cfg.agent_weights);
  return j_pmaf(r.trajectory, scene, scene.goal, cfg.trajectory_weights);
}

TuningResult tune_scene(const Scene& scene, const LabelingConfig& cfg) {
  cfg.validate();
  scene.validate();
  const Objective objective = [&](const Eigen::VectorXd& x) { return plan_cost(scene, ParamVector(x), cfg); };
  BoResult bo = bo_minimize(objective, cfg.bounds, cfg.bo);
  TuningResult out{ParamVector(bo.best_x), bo.best_y, std::move(bo.observations), {}};
  out.plan = execute(scene, out.p_star, cfg.planner, cfg.agent_weights);
  return out;
}

std::optional<LabeledSample> label_scene(const Scene& scene, const LabelingConfig& cfg, int scene_id) {
  TuningResult t = tune_scene(scene, cfg);
  if (!plan_succeeded(t.plan)) return std::nullopt;
  LabeledSample s;
  s.scene_id = scene_id;
  s.cloud = synthesize_cloud(scene, cfg.cloud_points, cfg.cloud_density);
  s.p_star = t.p_star;
  s.best_cost = t.best_cost;
  s.reached = true;
  return s;
}

DatasetSummary label_scenes(const std::vector<SceneJob>& jobs, const LabelingConfig& cfg, std::ostream& dataset_out,
                            int threads) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  std::vector<std::optional<LabeledSample>> samples(jobs.size());
  std::vector<SceneOutcome> outcomes(jobs.size());

  auto run = [&](std::size_t i) {
    const auto start = Clock::now();
    LabelingConfig local = cfg;
    local.bo.seed = mix_seed(jobs[i].seed, 0xb0);
    samples[i] = label_scene(jobs[i].scene, local, jobs[i].scene_id);
    outcomes[i] = {jobs[i].scene_id, jobs[i].seed, samples[i].has_value(),
                   samples[i] ? samples[i]->best_cost : 0.0,
                   std::chrono::duration<double>(Clock::now() - start).count()};
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < jobs.size(); i = next++) run(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  DatasetSummary summary;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    ++summary.n_attempted;
    summary.seeds.push_back(jobs[i].seed);
    summary.scenes.push_back(outcomes[i]);
    if (!samples[i]) continue;
    ++summary.n_succeeded;
    dataset_out << sample_to_json(*samples[i]).dump() << '\n';
  }
  if (!dataset_out) throw IoError("dataset write failed");
  summary.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return summary;
}

DatasetSummary build_dataset(int n_scenes, std::uint64_t seed, const SceneRandomizerConfig& scene_cfg,
                             const LabelingConfig& cfg, const std::string& dataset_path,
                             const std::string& summary_path, int threads) {
  if (n_scenes < 1) throw InvalidArgument("build_dataset: n_scenes must be >= 1");
  std::vector<SceneJob> jobs;
  for (int i = 0; i < n_scenes; ++i) {
    const auto s = mix_seed(seed, static_cast<std::uint64_t>(i));
    jobs.push_back({i, s, randomize_scene(s, scene_cfg)});
  }
  std::ofstream out(dataset_path);
  if (!out) throw IoError("cannot open for writing: " + dataset_path);
  DatasetSummary summary = label_scenes(jobs, cfg, out, threads);
  out.close();
  if (!out) throw IoError("write failed: " + dataset_path);
  if (!summary_path.empty()) write_json(summary_path, summary_to_json(summary));
  return summary;
}

}  // namespace cfplan
