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

#include "cfplan/config.hpp"

#include <set>

namespace cfplan {

namespace {

// Reads named fields from one JSON object and rejects keys nobody asked for.
class Section {
 public:
  Section(const Json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw IoError("config: '" + name_ + "' must be an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, _] : j_.items())
      if (!seen_.count(key)) throw IoError("config: unknown key '" + name_ + "." + key + "'");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw IoError("config: '" + name_ + "." + key + "': " + e.what());
    }
  }
  void get(const char* key, Vec3& out) {
    seen_.insert(key);
    if (j_.contains(key)) out = vec3_from_json(j_.at(key));
  }
  void get(const char* key, WorkspaceBounds& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    Section s(j_.at(key), name_ + "." + key);
    s.get("min", out.min);
    s.get("max", out.max);
  }
  const Json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

 private:
  const Json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

Eigen::VectorXd vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw IoError(std::string("config: ") + what + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw IoError(std::string("config: ") + what + " must hold numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json box_to_json(const WorkspaceBounds& b) { return {{"min", to_json(b.min)}, {"max", to_json(b.max)}}; }

}  // namespace

void RunConfig::validate() const {
  labeling.validate();
  scene.validate();
  if (threads < 1) throw InvalidArgument("config: threads must be >= 1");
  if (knn_k < 1) throw InvalidArgument("config: knn_k must be >= 1");
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig cfg;
  auto& lab = cfg.labeling;
  bool bounds_given = false;
  {
    Section root(j, "config");
    root.get("threads", cfg.threads);
    root.get("knn_k", cfg.knn_k);
    if (const Json* p = root.child("planner")) {
      Section s(*p, "planner");
      auto& pc = lab.planner;
      s.get("n_agents", pc.n_agents);
      s.get("horizon", pc.horizon);
      s.get("dt", pc.dt);
      s.get("mass", pc.mass);
      s.get("replan_every", pc.replan_every);
      s.get("v_max", pc.v_max);
      s.get("max_steps", pc.max_steps);
      s.get("goal_tolerance", pc.goal_tolerance);
      s.get("master_seed", pc.master_seed);
      if (const Json* jac = s.child("jacobian")) {
        if (!jac->is_array() || jac->size() != 3) throw IoError("config: planner.jacobian must have 3 rows");
        const Eigen::VectorXd r0 = vector_from_json((*jac)[0], "jacobian row");
        JacobianMatrix<double> m(3, r0.size());
        for (int r = 0; r < 3; ++r) {
          const Eigen::VectorXd row = vector_from_json((*jac)[static_cast<std::size_t>(r)], "jacobian row");
          if (row.size() != r0.size()) throw IoError("config: jacobian rows differ in length");
          m.row(r) = row.transpose();
        }
        pc.jacobian = m;
      }
    }
    if (const Json* p = root.child("agent_weights")) {
      Section s(*p, "agent_weights");
      s.get("w_pl", lab.agent_weights.w_pl);
      s.get("w_gd", lab.agent_weights.w_gd);
      s.get("w_od", lab.agent_weights.w_od);
      s.get("w_ws", lab.agent_weights.w_ws);
    }
    if (const Json* p = root.child("trajectory_weights")) {
      Section s(*p, "trajectory_weights");
      s.get("w_cl", lab.trajectory_weights.w_cl);
      s.get("w_pl", lab.trajectory_weights.w_pl);
      s.get("w_sm", lab.trajectory_weights.w_sm);
      s.get("w_gd", lab.trajectory_weights.w_gd);
    }
    if (const Json* p = root.child("bounds")) {
      Section s(*p, "bounds");
      const Json* lo = s.child("low");
      const Json* hi = s.child("high");
      if (!lo || !hi) throw IoError("config: bounds needs both 'low' and 'high'");
      try {
        lab.bounds = BoundsBox(vector_from_json(*lo, "bounds.low"), vector_from_json(*hi, "bounds.high"));
      } catch (const InvalidArgument& e) {
        throw IoError(std::string("config: ") + e.what());
      }
      bounds_given = true;
    }
    if (const Json* p = root.child("bo")) {
      Section s(*p, "bo");
      s.get("n_init", lab.bo.n_init);
      s.get("n_iter", lab.bo.n_iter);
      s.get("seed", lab.bo.seed);
      s.get("observation_noise", lab.bo.observation_noise);
      s.get("n_quasi_random", lab.bo.acquisition.n_quasi_random);
      s.get("n_perturbations", lab.bo.acquisition.n_perturbations);
      s.get("perturbation_fraction", lab.bo.acquisition.perturbation_fraction);
      s.get("kappa", lab.bo.acquisition.kappa);
    }
    if (const Json* p = root.child("cloud")) {
      Section s(*p, "cloud");
      s.get("points", lab.cloud_points);
      s.get("density", lab.cloud_density);
    }
    if (const Json* p = root.child("scene")) {
      Section s(*p, "scene");
      auto& sc = cfg.scene;
      s.get("workspace", sc.workspace);
      s.get("start", sc.start);
      s.get("goal_region", sc.goal_region);
      s.get("floating_region", sc.floating_region);
      s.get("min_floating", sc.min_floating);
      s.get("max_floating", sc.max_floating);
      s.get("min_radius", sc.min_radius);
      s.get("max_radius", sc.max_radius);
      s.get("min_half_length", sc.min_half_length);
      s.get("max_half_length", sc.max_half_length);
      s.get("voxel_radius", sc.voxel_radius);
      s.get("min_clearance", sc.min_clearance);
      s.get("max_rejections", sc.max_rejections);
      if (const Json* fixed = s.child("fixed_primitives")) {
        if (!fixed->is_array()) throw IoError("config: scene.fixed_primitives must be an array");
        sc.fixed_primitives.clear();
        for (const auto& c : *fixed) {
          Section cs(c, "scene.fixed_primitives[]");
          Cuboid cub;
          cs.get("center", cub.center);
          cs.get("half_extents", cub.half_extents);
          sc.fixed_primitives.push_back(cub);
        }
      }
    }
  }
  if (!bounds_given) lab.bounds = default_bounds(lab.planner.n_agents);
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("config: ") + e.what());
  }
  return cfg;
}

Json run_config_to_json(const RunConfig& cfg) {
  const auto& lab = cfg.labeling;
  const auto& pc = lab.planner;
  Json jac = Json::array();
  for (int r = 0; r < 3; ++r) jac.push_back(vector_to_json(pc.jacobian.row(r).transpose()));
  Json fixed = Json::array();
  for (const auto& c : cfg.scene.fixed_primitives)
    fixed.push_back({{"center", to_json(c.center)}, {"half_extents", to_json(c.half_extents)}});
  const auto& sc = cfg.scene;
  return {
      {"threads", cfg.threads},
      {"knn_k", cfg.knn_k},
      {"planner",
       {{"n_agents", pc.n_agents}, {"horizon", pc.horizon}, {"dt", pc.dt}, {"mass", pc.mass},
        {"replan_every", pc.replan_every}, {"v_max", pc.v_max}, {"max_steps", pc.max_steps},
        {"goal_tolerance", pc.goal_tolerance}, {"master_seed", pc.master_seed}, {"jacobian", jac}}},
      {"agent_weights",
       {{"w_pl", lab.agent_weights.w_pl}, {"w_gd", lab.agent_weights.w_gd}, {"w_od", lab.agent_weights.w_od},
        {"w_ws", lab.agent_weights.w_ws}}},
      {"trajectory_weights",
       {{"w_cl", lab.trajectory_weights.w_cl}, {"w_pl", lab.trajectory_weights.w_pl},
        {"w_sm", lab.trajectory_weights.w_sm}, {"w_gd", lab.trajectory_weights.w_gd}}},
      {"bounds", {{"low", vector_to_json(lab.bounds.low)}, {"high", vector_to_json(lab.bounds.high)}}},
      {"bo",
       {{"n_init", lab.bo.n_init}, {"n_iter", lab.bo.n_iter}, {"seed", lab.bo.seed},
        {"observation_noise", lab.bo.observation_noise}, {"n_quasi_random", lab.bo.acquisition.n_quasi_random},
        {"n_perturbations", lab.bo.acquisition.n_perturbations},
        {"perturbation_fraction", lab.bo.acquisition.perturbation_fraction}, {"kappa", lab.bo.acquisition.kappa}}},
      {"cloud", {{"points", lab.cloud_points}, {"density", lab.cloud_density}}},
      {"scene",
       {{"workspace", box_to_json(sc.workspace)}, {"start", to_json(sc.start)},
        {"goal_region", box_to_json(sc.goal_region)}, {"floating_region", box_to_json(sc.floating_region)},
        {"fixed_primitives", fixed}, {"min_floating", sc.min_floating}, {"max_floating", sc.max_floating},
        {"min_radius", sc.min_radius}, {"max_radius", sc.max_radius}, {"min_half_length", sc.min_half_length},
        {"max_half_length", sc.max_half_length}, {"voxel_radius", sc.voxel_radius},
        {"min_clearance", sc.min_clearance}, {"max_rejections", sc.max_rejections}}},
  };
}

RunConfig load_run_config(const std::string& path) { return run_config_from_json(read_json(path)); }

}  // namespace cfplan
