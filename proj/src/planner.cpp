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

#include "cfplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace cfplan {

namespace {

constexpr double kMinProximity = 1e-6;

}  // namespace

void PlannerConfig::validate() const {
  if (n_agents < 1) throw InvalidArgument("planner: n_agents must be >= 1");
  if (horizon < 1) throw InvalidArgument("planner: horizon must be >= 1");
  if (!(dt > 0.0)) throw InvalidArgument("planner: dt must be > 0");
  if (!(mass > 0.0)) throw InvalidArgument("planner: mass must be > 0");
  if (replan_every < 1) throw InvalidArgument("planner: replan_every must be >= 1");
  if (!(v_max > 0.0)) throw InvalidArgument("planner: v_max must be > 0");
  if (max_steps < 0) throw InvalidArgument("planner: max_steps must be >= 0");
  if (!(goal_tolerance > 0.0)) throw InvalidArgument("planner: goal tolerance must be > 0");
  if (jacobian.cols() < 1 || !jacobian.allFinite()) throw InvalidArgument("planner: jacobian must be finite 3xn");
}

void AgentCostWeights::validate() const {
  if (w_pl < 0.0 || w_gd < 0.0 || w_od < 0.0 || w_ws < 0.0)
    throw InvalidArgument("agent cost weights must be non-negative");
}

double Trajectory::min_clearance() const {
  double m = kNoObstacleClearance;
  for (const auto& s : samples) m = std::min(m, s.clearance);
  return m;
}

Trajectory make_trajectory(std::span<const Vec3> points, const Scene& scene, double dt) {
  Trajectory traj;
  traj.samples.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double c = scene.obstacles.empty() ? kNoObstacleClearance : min_surface_distance(scene.obstacles, points[i]);
    traj.samples.push_back({static_cast<double>(i) * dt, points[i], c});
  }
  return traj;
}

ObstacleField::ObstacleField(const std::vector<Sphere>& obstacles)
    : spheres_(obstacles), centers_(3, static_cast<Eigen::Index>(obstacles.size())),
      radii_(static_cast<Eigen::Index>(obstacles.size())) {
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    centers_.col(static_cast<Eigen::Index>(i)) = obstacles[i].center;
    radii_[static_cast<Eigen::Index>(i)] = obstacles[i].radius;
  }
  if (obstacles.empty()) return;
  max_radius_ = radii_.maxCoeff();
  origin_ = centers_.rowwise().minCoeff();
  const Vec3 extent = centers_.rowwise().maxCoeff() - origin_;
  cell_ = std::max({2.0 * max_radius_, 0.05, extent.maxCoeff() / 64.0});
  for (int k = 0; k < 3; ++k) dims_[k] = static_cast<int>(std::floor(extent[k] / cell_)) + 1;

  auto cell_of = [&](Eigen::Index i) {
    Eigen::Vector3i c;
    for (int k = 0; k < 3; ++k)
      c[k] = std::clamp(static_cast<int>(std::floor((centers_(k, i) - origin_[k]) / cell_)), 0, dims_[k] - 1);
    return (c[0] * dims_[1] + c[1]) * dims_[2] + c[2];
  };
  cell_start_.assign(static_cast<std::size_t>(dims_.prod()) + 1, 0);
  for (Eigen::Index i = 0; i < centers_.cols(); ++i) ++cell_start_[static_cast<std::size_t>(cell_of(i)) + 1];
  for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
  cell_items_.resize(obstacles.size());
  std::vector<int> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (Eigen::Index i = 0; i < centers_.cols(); ++i)
    cell_items_[static_cast<std::size_t>(fill[static_cast<std::size_t>(cell_of(i))]++)] = static_cast<int>(i);
}

template <typename Fn>
void ObstacleField::visit_ball(const Vec3& x, double radius, Fn&& fn) const {
  Eigen::Vector3i lo, hi;
  for (int k = 0; k < 3; ++k) {
    const double a = std::floor((x[k] - radius - origin_[k]) / cell_);
    const double b = std::floor((x[k] + radius - origin_[k]) / cell_);
    if (b < 0.0 || a > dims_[k] - 1) return;
    lo[k] = static_cast<int>(std::max(a, 0.0));
    hi[k] = static_cast<int>(std::min(b, static_cast<double>(dims_[k] - 1)));
  }
  for (int i = lo[0]; i <= hi[0]; ++i)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int l = lo[2]; l <= hi[2]; ++l) {
        const auto c = static_cast<std::size_t>((i * dims_[1] + j) * dims_[2] + l);
        for (int p = cell_start_[c]; p < cell_start_[c + 1]; ++p) fn(cell_items_[static_cast<std::size_t>(p)]);
      }
}

bool ObstacleField::covers_all(const Vec3& x, double radius) const {
  for (int k = 0; k < 3; ++k) {
    if (x[k] - radius - origin_[k] > 0.0) return false;
    if (std::floor((x[k] + radius - origin_[k]) / cell_) < dims_[k] - 1) return false;
  }
  return true;
}

Eigen::VectorXd ObstacleField::surface_distances(const Vec3& x) const {
  return (centers_.colwise() - x).colwise().norm().transpose() - radii_;
}

double ObstacleField::clearance(const Vec3& x) const {
  if (spheres_.empty()) return kNoObstacleClearance;
  for (double radius = 2.0 * cell_ + max_radius_;; radius *= 2.0) {
    double best = std::numeric_limits<double>::infinity();
    visit_ball(x, radius, [&](int i) { best = std::min(best, (centers_.col(i) - x).norm() - radii_[i]); });
    // Centers farther than `radius` cannot beat radius - max_radius_.
    if (best <= radius - max_radius_ || covers_all(x, radius)) return best;
  }
}

bool ObstacleField::dense(const Vec3& x, double radius) const {
  std::int64_t cells = 1;
  for (int k = 0; k < 3; ++k) {
    const double a = std::clamp(std::floor((x[k] - radius - origin_[k]) / cell_), 0.0, dims_[k] - 1.0);
    const double b = std::clamp(std::floor((x[k] + radius - origin_[k]) / cell_), 0.0, dims_[k] - 1.0);
    cells *= static_cast<std::int64_t>(b - a) + 1;
  }
  return 2 * cells >= static_cast<std::int64_t>(cell_start_.size() - 1);
}

double ObstacleField::shell(const Vec3& x, double r_d, std::vector<int>& indices) const {
  indices.clear();
  if (spheres_.empty()) return kNoObstacleClearance;
  const double radius = std::max(r_d, 0.0) + max_radius_;
  double best = std::numeric_limits<double>::infinity();
  if (dense(x, radius)) {
    // Scanning every sphere in index order is cheaper than sorting most of them.
    const int n = static_cast<int>(spheres_.size());
    for (int i = 0; i < n; ++i) {
      const double d = (centers_.col(i) - x).norm() - radii_[i];
      best = std::min(best, d);
      if (r_d > 0.0 && d <= r_d) indices.push_back(i);
    }
    return best;
  }
  visit_ball(x, radius, [&](int i) {
    const double d = (centers_.col(i) - x).norm() - radii_[i];
    best = std::min(best, d);
    if (r_d > 0.0 && d <= r_d) indices.push_back(i);
  });
  std::sort(indices.begin(), indices.end());
  if (best <= radius - max_radius_ || covers_all(x, radius)) return best;
  return clearance(x);
}

std::vector<int> ObstacleField::nearest_centers(const Vec3& x, std::size_t k) const {
  k = std::min(k, spheres_.size());
  std::vector<std::pair<double, int>> found;
  for (double radius = cell_;; radius *= 2.0) {
    found.clear();
    const bool all = covers_all(x, radius);
    visit_ball(x, radius, [&](int i) {
      const double d2 = (centers_.col(i) - x).squaredNorm();
      if (all || d2 <= radius * radius) found.emplace_back(d2, i);
    });
    if (found.size() >= k || all) break;
  }
  std::partial_sort(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(k), found.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(found[i].second);
  return out;
}

AgentKinematics<double> integrate_step(const AgentKinematics<double>& kin, const Vec3& force, double mass,
                                       double dt, double v_max) {
  if (!(mass > 0.0) || !(dt > 0.0)) throw InvalidArgument("integrate_step: mass and dt must be > 0");
  AgentKinematics<double> next;
  next.velocity = kin.velocity + force / mass * dt;
  const double speed = next.velocity.norm();
  if (speed > v_max) next.velocity *= v_max / speed;
  next.position = kin.position + next.velocity * dt;
  return next;
}

AgentSimulator::AgentSimulator(const Agent& agent, const Scene& scene, const ObstacleField& field,
                               const PlannerConfig& cfg)
    : agent_(agent), scene_(&scene), field_(&field), cfg_(&cfg), state_(agent.state),
      rng_(stream_seed(agent.heuristic)), currents_(field.size()) {
  if (agent_.gains.k_manip != 0.0) manip_unit_force_ = agent_.gains.lambda * min_singular_direction(cfg.jacobian);
  clearance_ = field_->shell(state_.position, agent_.r_d, shell_);
}

void AgentSimulator::step() {
  const auto spheres = field_->spheres();
  const double shell = agent_.r_d > 0.0 ? agent_.r_d : 1.0;
  const Vec3& x = state_.position;
  const Vec3& v = state_.velocity;
  // Nearest obstacles to the agent, enough for the neighbour-based heuristics
  // to find one that differs from the obstacle being assigned.
  std::vector<Sphere> neighbours;
  bool have_neighbours = false;
  // Same per-obstacle terms as steering_force with unit gains, summed in shell order.
  Vec3 circular = Vec3::Zero();
  Vec3 repulsive = Vec3::Zero();
  for (int i : shell_) {
    auto& current = currents_[static_cast<std::size_t>(i)];
    const Sphere& obs = spheres[static_cast<std::size_t>(i)];
    if (!current) {
      if (!have_neighbours) {
        for (int j : field_->nearest_centers(x, 2)) neighbours.push_back(spheres[static_cast<std::size_t>(j)]);
        have_neighbours = true;
      }
      const bool usable = std::any_of(neighbours.begin(), neighbours.end(), [&](const Sphere& o) { return !(o == obs); });
      current = compute_current(agent_.heuristic, state_, obs, scene_->goal,
                                usable ? std::span<const Sphere>(neighbours) : spheres, rng_);
      if (std::abs(current->norm() - 1.0) > 1e-9) throw InvalidArgument("heuristic returned a non-unit current");
    }
    const Vec3 offset = x - obs.center;
    const double center_distance = offset.norm();
    double rho = center_distance - obs.radius;
    if (rho > shell) continue;
    circular += v.cross(Vec3(1.0 * current->cross(v)));
    if (rho <= 0.0) rho = kMinClearance;
    const Vec3 outward = center_distance > 0.0 ? Vec3(offset / center_distance) : Vec3::UnitZ();
    repulsive += 1.0 * (1.0 / rho - 1.0 / shell) / (rho * rho) * outward;
  }
  const auto& g = agent_.gains;
  const Vec3 force = attractive_force(state_, scene_->goal, g) + g.k_cf * circular + g.k_manip * manip_unit_force_ +
                     g.k_r * repulsive;
  state_ = integrate_step(state_, force, cfg_->mass, cfg_->dt, cfg_->v_max);
  clearance_ = field_->shell(state_.position, agent_.r_d, shell_);
}

Trajectory rollout(const Agent& agent, const Scene& scene, const PlannerConfig& cfg, double t0) {
  const ObstacleField field(scene.obstacles);
  return rollout(agent, scene, field, cfg, t0);
}

Trajectory rollout(const Agent& agent, const Scene& scene, const ObstacleField& field, const PlannerConfig& cfg,
                   double t0) {
  AgentSimulator sim(agent, scene, field, cfg);
  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(cfg.horizon) + 1);
  traj.samples.push_back({t0, sim.state().position, sim.clearance()});
  for (int k = 1; k <= cfg.horizon; ++k) {
    sim.step();
    traj.samples.push_back({t0 + k * cfg.dt, sim.state().position, sim.clearance()});
  }
  return traj;
}

double agent_cost(const Trajectory& traj, const Scene& scene, const Vec3& goal, const AgentCostWeights& w) {
  if (traj.samples.empty()) throw InvalidArgument("agent_cost: empty trajectory");
  const auto& s = traj.samples;
  const std::size_t first = s.size() > 1 ? 1 : 0;

  double path_length = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) path_length += (s[i].x - s[i - 1].x).norm();

  const double goal_distance = (goal - s.back().x).norm();

  double proximity = 0.0;
  if (!scene.obstacles.empty()) {
    double d_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = first; i < s.size(); ++i) d_min = std::min(d_min, s[i].clearance);
    proximity = 1.0 / std::max(d_min, kMinProximity);
  }

  double violation = 0.0;
  const auto& ws = scene.workspace;
  for (std::size_t i = first; i < s.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      const double v = s[i].x[k];
      if (v > ws.max[k]) violation += (v - ws.max[k]) * (v - ws.max[k]);
      else if (v < ws.min[k]) violation += (v - ws.min[k]) * (v - ws.min[k]);
    }
  }

  return w.w_pl * path_length + w.w_gd * goal_distance + w.w_od * proximity + w.w_ws * violation;
}

int plan_step(std::span<const Agent> agents, const Scene& scene, const PlannerConfig& cfg,
              const AgentCostWeights& w) {
  const ObstacleField field(scene.obstacles);
  return plan_step(agents, scene, field, cfg, w);
}

int plan_step(std::span<const Agent> agents, const Scene& scene, const ObstacleField& field,
              const PlannerConfig& cfg, const AgentCostWeights& w, double t0) {
  if (agents.empty()) throw InvalidArgument("plan_step: need at least one agent");
  int best_id = agents.front().id;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const auto& agent : agents) {
    const double c = agent_cost(rollout(agent, scene, field, cfg, t0), scene, scene.goal, w);
    if (c < best_cost || (c == best_cost && agent.id < best_id)) {
      best_cost = c;
      best_id = agent.id;
    }
  }
  return best_id;
}

std::vector<Agent> make_agents(const ParamVector& p, const Scene& scene, const PlannerConfig& cfg) {
  if (p.n_agents() != cfg.n_agents) throw InvalidArgument("make_agents: parameter vector agent count mismatch");
  p.validate();
  std::vector<Agent> agents;
  agents.reserve(static_cast<std::size_t>(cfg.n_agents));
  for (int id = 1; id <= cfg.n_agents; ++id) {
    Agent a;
    a.id = id;
    a.heuristic = heuristic_for_agent(id, cfg.master_seed);
    a.gains = p.gains(id);
    a.r_d = p.r_d();
    a.state.position = scene.start;
    agents.push_back(a);
  }
  return agents;
}

PlanResult execute(const Scene& scene, const ParamVector& p, const PlannerConfig& cfg, const AgentCostWeights& w) {
  cfg.validate();
  w.validate();
  std::vector<Agent> agents = make_agents(p, scene, cfg);
  const ObstacleField field(scene.obstacles);

  PlanResult result;
  AgentKinematics<double> state;
  state.position = scene.start;

  result.trajectory.samples.push_back({0.0, state.position, field.clearance(state.position)});

  std::optional<AgentSimulator> executor;
  int step = 0;
  for (;; ++step) {
    if ((state.position - scene.goal).norm() <= cfg.goal_tolerance) {
      result.reached = true;
      break;
    }
    if (step >= cfg.max_steps) break;
    if (step % cfg.replan_every == 0) {
      for (auto& a : agents) a.state = state;
      const int best = plan_step(agents, scene, field, cfg, w, step * cfg.dt);
      result.best_agent_history.emplace_back(step, best);
      if (!executor || executor->agent().id != best) {
        executor.emplace(agents[static_cast<std::size_t>(best - 1)], scene, field, cfg);
      }
    }
    executor->step();
    state = executor->state();
    result.trajectory.samples.push_back({(step + 1) * cfg.dt, state.position, executor->clearance()});
  }
  result.steps_used = step;
  result.min_clearance = result.trajectory.min_clearance();
  return result;
}

}  // namespace cfplan
