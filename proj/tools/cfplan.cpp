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

// cfplan command-line tool.
//
// Exit codes: 0 success, 1 plan did not reach the goal, 2 usage or I/O error.
// Machine-readable output goes to stdout, diagnostics to stderr.

#include "CLI11.hpp"
#include "cfplan/config.hpp"
#include "cfplan/inference.hpp"
#include "cfplan/io.hpp"
#include "cfplan/scene.hpp"
#include "cfplan/svg.hpp"
#include "cfplan/tuner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace cfplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotReached = 1;
constexpr int kExitError = 2;

RunConfig load_config(const std::string& path) { return path.empty() ? RunConfig{} : load_run_config(path); }

// Trailing "_<n>" of a file stem, used to order scene files numerically.
long trailing_index(const fs::path& p) {
  const std::string stem = p.stem().string();
  const auto pos = stem.find_last_of('_');
  if (pos == std::string::npos) return -1;
  try {
    return std::stol(stem.substr(pos + 1));
  } catch (...) {
    return -1;
  }
}

std::vector<fs::path> scene_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    const long ia = trailing_index(a), ib = trailing_index(b);
    if (ia != ib) return ia < ib;
    return a.filename() < b.filename();
  });
  return files;
}

struct GenScenesArgs {
  int count = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
};

int gen_scenes(const GenScenesArgs& a) {
  const RunConfig cfg = load_config(a.config);
  if (a.count < 0) throw InvalidArgument("--count must be >= 0");
  fs::create_directories(a.out);
  for (int i = 0; i < a.count; ++i) {
    const Scene scene = randomize_scene(mix_seed(a.seed, static_cast<std::uint64_t>(i)), cfg.scene);
    const fs::path path = fs::path(a.out) / ("scene_" + std::to_string(a.seed) + "_" + std::to_string(i) + ".json");
    write_scene(path.string(), scene);
  }
  std::cerr << "wrote " << a.count << " scenes to " << a.out << "\n";
  return kExitOk;
}

struct LabelArgs {
  std::string scenes;
  std::string out;
  std::string summary;
  std::string config;
  std::optional<int> iters;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
};

int label(const LabelArgs& a) {
  RunConfig cfg = load_config(a.config);
  auto& bo = cfg.labeling.bo;
  if (a.iters) {
    if (*a.iters < 2) throw InvalidArgument("--iters must be >= 2");
    bo.n_init = std::min(bo.n_init, *a.iters);
    bo.n_iter = *a.iters - bo.n_init;
  }
  if (a.threads) cfg.threads = *a.threads;
  if (a.seed) bo.seed = *a.seed;
  cfg.validate();

  std::vector<SceneJob> jobs;
  for (const auto& f : scene_files(a.scenes)) {
    const int id = static_cast<int>(jobs.size());
    jobs.push_back({id, mix_seed(bo.seed, static_cast<std::uint64_t>(id)), read_scene(f.string())});
  }
  std::ofstream out(a.out);
  if (!out) throw IoError("cannot open for writing: " + a.out);
  const DatasetSummary summary = label_scenes(jobs, cfg.labeling, out, cfg.threads);
  out.close();
  if (!out) throw IoError("write failed: " + a.out);
  if (!a.summary.empty()) write_json(a.summary, summary_to_json(summary));
  std::cerr << "success ratio " << summary.n_succeeded << "/" << summary.n_attempted << " ("
            << summary.wall_time_s << " s)\n";
  return kExitOk;
}

struct PlanArgs {
  std::string scene;
  std::string params;
  std::string infer;
  std::string traj;
  std::string plot;
  std::string config;
  std::optional<int> k;
};

int plan(const PlanArgs& a) {
  RunConfig cfg = load_config(a.config);
  if (a.k) cfg.knn_k = *a.k;
  cfg.validate();
  const Scene scene = read_scene(a.scene);

  ParamVector p = [&] {
    if (!a.params.empty()) return read_params(a.params);
    const auto dataset = read_dataset(a.infer);
    const PointCloud cloud = synthesize_cloud(scene, cfg.labeling.cloud_points, cfg.labeling.cloud_density);
    return knn_predict(featurize(cloud, scene.workspace), dataset, scene.workspace, cfg.knn_k);
  }();
  if (p.n_agents() != cfg.labeling.planner.n_agents)
    throw InvalidArgument("parameter vector does not match the configured agent count");

  const PlanResult result = execute(scene, p, cfg.labeling.planner, cfg.labeling.agent_weights);
  if (!a.traj.empty()) write_trajectory_csv(a.traj, result.trajectory);
  if (!a.plot.empty()) write_plot_svg(a.plot, scene, result.trajectory);
  std::cout << plan_result_to_json(result).dump(2) << "\n";
  return result.reached ? kExitOk : kExitNotReached;
}

struct InferArgs {
  std::string cloud;
  std::string dataset;
  std::string config;
  std::optional<int> k;
};

int infer(const InferArgs& a) {
  RunConfig cfg = load_config(a.config);
  if (a.k) cfg.knn_k = *a.k;
  cfg.validate();
  const PointCloud cloud = read_cloud_csv(a.cloud);
  const auto dataset = read_dataset(a.dataset);
  const WorkspaceBounds& ws = cfg.scene.workspace;
  const ParamVector p = knn_predict(featurize(cloud, ws), dataset, ws, cfg.knn_k);
  std::cout << params_to_json(p).dump() << "\n";
  return kExitOk;
}

struct CloudArgs {
  std::string depth;
  std::string intrinsics;
  std::string out;
  std::optional<std::size_t> points;
};

int cloud(const CloudArgs& a) {
  const DepthImage img = read_depth_image(a.depth, a.intrinsics);
  PointCloud c = depth_to_cloud(img);
  if (a.points) c = subsample(c, *a.points);
  if (a.out.empty() || a.out == "-")
    write_cloud_csv(std::cout, c);
  else
    write_cloud_csv(a.out, c);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular-field motion planner with per-scene gain tuning"};
  app.require_subcommand(1);

  GenScenesArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-scenes", "Write randomized scenes as JSON files");
  gen_cmd->add_option("--count", gen.count, "Number of scenes")->required();
  gen_cmd->add_option("--seed", gen.seed, "Master seed")->required();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--config", gen.config, "Run configuration JSON");

  LabelArgs lab;
  auto* label_cmd = app.add_subcommand("label", "Tune every scene in a directory and write a JSONL dataset");
  label_cmd->add_option("--scenes", lab.scenes, "Directory of scene JSON files")->required();
  label_cmd->add_option("--out", lab.out, "Dataset path (JSON lines)")->required();
  label_cmd->add_option("--iters", lab.iters, "Objective evaluations per scene (default 56)");
  label_cmd->add_option("--summary", lab.summary, "Summary JSON path");
  label_cmd->add_option("--threads", lab.threads, "Scenes labeled in parallel");
  label_cmd->add_option("--seed", lab.seed, "Master seed for the optimizer");
  label_cmd->add_option("--config", lab.config, "Run configuration JSON");

  PlanArgs pl;
  auto* plan_cmd = app.add_subcommand("plan", "Execute the planner on one scene");
  plan_cmd->add_option("--scene", pl.scene, "Scene JSON")->required();
  auto* params_opt = plan_cmd->add_option("--params", pl.params, "Parameter vector JSON array");
  auto* infer_opt = plan_cmd->add_option("--infer", pl.infer, "Dataset to predict parameters from");
  params_opt->excludes(infer_opt);
  plan_cmd->add_option("--traj", pl.traj, "Trajectory CSV output");
  plan_cmd->add_option("--plot", pl.plot, "SVG plot output");
  plan_cmd->add_option("--k", pl.k, "Neighbours for --infer");
  plan_cmd->add_option("--config", pl.config, "Run configuration JSON");

  InferArgs inf;
  auto* infer_cmd = app.add_subcommand("infer", "Predict a parameter vector for a point cloud");
  infer_cmd->add_option("--cloud", inf.cloud, "Point cloud CSV")->required();
  infer_cmd->add_option("--dataset", inf.dataset, "Dataset (JSON lines)")->required();
  infer_cmd->add_option("--k", inf.k, "Neighbours");
  infer_cmd->add_option("--config", inf.config, "Run configuration JSON");

  CloudArgs cl;
  auto* cloud_cmd = app.add_subcommand("cloud", "Back-project a depth image into a point cloud CSV");
  cloud_cmd->add_option("--depth", cl.depth, "16-bit PGM depth image (millimetres)")->required();
  cloud_cmd->add_option("--intrinsics", cl.intrinsics, "Camera sidecar JSON")->required();
  cloud_cmd->add_option("--out", cl.out, "Output CSV (default stdout)");
  cloud_cmd->add_option("--points", cl.points, "Farthest-point subsample size");

  std::string dump_config;
  auto* config_cmd = app.add_subcommand("config", "Print the effective run configuration");
  config_cmd->add_option("--config", dump_config, "Run configuration JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*gen_cmd) return gen_scenes(gen);
    if (*label_cmd) return label(lab);
    if (*plan_cmd) {
      if (pl.params.empty() == pl.infer.empty()) {
        std::cerr << "plan: exactly one of --params or --infer is required\n";
        return kExitError;
      }
      return plan(pl);
    }
    if (*infer_cmd) return infer(inf);
    if (*cloud_cmd) return cloud(cl);
    if (*config_cmd) {
      std::cout << run_config_to_json(load_config(dump_config)).dump(2) << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
