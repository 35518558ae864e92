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

// Predictive multi-agent planner.
//
// A team of virtual agents, each with its own current heuristic and gains, is
// rolled out from the executor's state every `replan_every` steps. The agent
// with the lowest predicted cost hands its gains, detection radius and
// heuristic to the executor, which then integrates the point-mass dynamics
// until the next replan.

#pragma once

#include "cfplan/fields.hpp"
#include "cfplan/geometry.hpp"
#include "cfplan/heuristics.hpp"
#include "cfplan/params.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cfplan {

/// Clearance reported when a scene has no obstacles.
inline constexpr double kNoObstacleClearance = 1e9;

struct PlannerConfig {
  int n_agents = 7;
  int horizon = 50;  // prediction steps per rollout
  double dt = 0.01;
  double mass = 1.0;
  int replan_every = 5;
  double v_max = 1.0;
  int max_steps = 2000;
  double goal_tolerance = 0.03;
  std::uint64_t master_seed = 0;
  /// Constant task-space Jacobian feeding the manipulability force.
  JacobianMatrix<double> jacobian = Eigen::Vector3d(1.0, 1.0, 0.5).asDiagonal().toDenseMatrix();

  void validate() const;
};

struct AgentCostWeights {
  double w_pl = 1.0;
  double w_gd = 2.0;
  double w_od = 0.05;
  double w_ws = 10.0;

  void validate() const;
};

struct Agent {
  int id = 1;
  CurrentHeuristic heuristic = heuristic::Velocity{};
  GainSet<double> gains;
  double r_d = 0.3;
  AgentKinematics<double> state;
};

struct TrajectorySample {
  double t = 0.0;
  Vec3 x = Vec3::Zero();
  double clearance = kNoObstacleClearance;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;

  std::size_t size() const { return samples.size(); }
  const Vec3& final_position() const { return samples.back().x; }
  double min_clearance() const;
};

/// Trajectory of `points` sampled every `dt` with clearances measured against `scene`.
Trajectory make_trajectory(std::span<const Vec3> points, const Scene& scene, double dt = 1.0);

struct PlanResult {
  Trajectory trajectory;
  bool reached = false;
  int steps_used = 0;
  double min_clearance = kNoObstacleClearance;
  std::vector<std::pair<int, int>> best_agent_history;  // (step, agent id)
};

/// Obstacle set bucketed on a uniform grid of sphere centers. Queries are exact.
class ObstacleField {
 public:
  explicit ObstacleField(const std::vector<Sphere>& obstacles);

  std::size_t size() const { return spheres_.size(); }
  std::span<const Sphere> spheres() const { return spheres_; }
  /// Surface distance from `x` to every obstacle.
  Eigen::VectorXd surface_distances(const Vec3& x) const;
  /// Smallest surface distance from `x`, or kNoObstacleClearance when empty.
  double clearance(const Vec3& x) const;
  /// Collects the obstacles whose surface lies within `r_d` of `x`, in ascending
  /// index order, and returns the clearance at `x`.
  double shell(const Vec3& x, double r_d, std::vector<int>& indices) const;
  /// Indices of the `k` obstacles with centers nearest to `x`, ordered by
  /// distance then index.
  std::vector<int> nearest_centers(const Vec3& x, std::size_t k) const;

 private:
  template <typename Fn>
  void visit_ball(const Vec3& x, double radius, Fn&& fn) const;
  bool covers_all(const Vec3& x, double radius) const;
  /// True when the cell box of the query ball spans at least half the grid.
  bool dense(const Vec3& x, double radius) const;

  std::vector<Sphere> spheres_;
  Eigen::Matrix3Xd centers_;
  Eigen::VectorXd radii_;
  double max_radius_ = 0.0;
  // Grid over the centers' bounding box; cell_start_ is a CSR offset table into cell_items_.
  Vec3 origin_ = Vec3::Zero();
  double cell_ = 1.0;
  Eigen::Vector3i dims_ = Eigen::Vector3i::Ones();
  std::vector<int> cell_start_;
  std::vector<int> cell_items_;
};

/// Semi-implicit Euler step with a speed cap.
AgentKinematics<double> integrate_step(const AgentKinematics<double>& kin, const Vec3& force, double mass,
                                       double dt, double v_max);

/// Point mass driven by one agent's parameters. Currents are assigned when an
/// obstacle first enters the detection shell and held for the lifetime of the
/// simulator.
class AgentSimulator {
 public:
  AgentSimulator(const Agent& agent, const Scene& scene, const ObstacleField& field, const PlannerConfig& cfg);

  /// Clearance at the current state.
  double clearance() const { return clearance_; }
  const AgentKinematics<double>& state() const { return state_; }
  const Agent& agent() const { return agent_; }
  void step();

 private:
  Agent agent_;
  const Scene* scene_;
  const ObstacleField* field_;
  const PlannerConfig* cfg_;
  AgentKinematics<double> state_;
  RngState rng_;
  std::vector<std::optional<Vec3>> currents_;
  Vec3 manip_unit_force_ = Vec3::Zero();
  double clearance_ = kNoObstacleClearance;
  std::vector<int> shell_;
};

/// Predicts `cfg.horizon` steps of `agent` from its own state.
Trajectory rollout(const Agent& agent, const Scene& scene, const PlannerConfig& cfg, double t0 = 0.0);
Trajectory rollout(const Agent& agent, const Scene& scene, const ObstacleField& field, const PlannerConfig& cfg,
                   double t0 = 0.0);

/// Predicted-trajectory cost: path length, goal distance, obstacle proximity and workspace violation.
double agent_cost(const Trajectory& traj, const Scene& scene, const Vec3& goal, const AgentCostWeights& w);

/// Rolls out every agent and returns the id of the cheapest (lowest id on ties).
int plan_step(std::span<const Agent> agents, const Scene& scene, const PlannerConfig& cfg,
              const AgentCostWeights& w);
int plan_step(std::span<const Agent> agents, const Scene& scene, const ObstacleField& field,
              const PlannerConfig& cfg, const AgentCostWeights& w, double t0 = 0.0);

/// Builds the agent team encoded by `p`; every agent starts at rest at scene.start.
std::vector<Agent> make_agents(const ParamVector& p, const Scene& scene, const PlannerConfig& cfg);

PlanResult execute(const Scene& scene, const ParamVector& p, const PlannerConfig& cfg, const AgentCostWeights& w);

}  // namespace cfplan
