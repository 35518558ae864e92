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

#include "cfplan/heuristics.hpp"

#include <limits>

namespace cfplan {

namespace {

constexpr double kDegenerate = 1e-9;

Vec3 fallback(const Vec3& toward) {
  const Vec3 a = toward.cross(Vec3::UnitZ());
  if (a.norm() >= kDegenerate) return a.normalized();
  return toward.cross(Vec3::UnitX()).normalized();
}

Vec3 unit_or_fallback(const Vec3& v, const Vec3& toward) {
  const double n = v.norm();
  return n >= kDegenerate ? Vec3(v / n) : fallback(toward);
}

Vec3 toward_obstacle(const AgentKinematics<double>& kin, const Sphere& obs) {
  const Vec3 d = obs.center - kin.position;
  const double n = d.norm();
  return n > 0.0 ? Vec3(d / n) : Vec3::UnitX();
}

Vec3 velocity_current(const AgentKinematics<double>& kin, const Vec3& d) {
  return unit_or_fallback(d.cross(kin.velocity), d);
}

Vec3 goal_current(const AgentKinematics<double>& kin, const Vec3& d, const Vec3& goal) {
  return unit_or_fallback(d.cross(goal - kin.position), d);
}

Vec3 path_length_current(const AgentKinematics<double>& kin, const Vec3& d, const Vec3& goal) {
  const Vec3 c = velocity_current(kin, d);
  const Vec3& v = kin.velocity;
  const Vec3 to_goal = goal - kin.position;
  const double plus = v.cross(c.cross(v)).dot(to_goal);
  const double minus = v.cross((-c).cross(v)).dot(to_goal);
  return minus > plus ? Vec3(-c) : c;
}

Vec3 obstacle_distance_current(const AgentKinematics<double>& kin, const Sphere& obs, const Vec3& d,
                               const Vec3& goal, std::span<const Sphere> others) {
  const Sphere* nearest = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : others) {
    if (o == obs) continue;
    const double dist = (o.center - kin.position).squaredNorm();
    if (dist < best) {
      best = dist;
      nearest = &o;
    }
  }
  if (nearest == nullptr) return goal_current(kin, d, goal);
  return unit_or_fallback(d.cross(kin.position - nearest->center), d);
}

Vec3 random_current(RngState& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Vec3 v(n(rng), n(rng), n(rng));
    const double len = v.norm();
    if (len > 1e-12) return v / len;
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string heuristic_name(const CurrentHeuristic& h) {
  return std::visit(overloaded{
                        [](heuristic::Velocity) { return std::string("velocity"); },
                        [](heuristic::PathLength) { return std::string("path_length"); },
                        [](heuristic::GoalVector) { return std::string("goal_vector"); },
                        [](heuristic::ObstacleDistance) { return std::string("obstacle_distance"); },
                        [](heuristic::PathLengthObstacleDistance) {
                          return std::string("path_length_obstacle_distance");
                        },
                        [](heuristic::Random) { return std::string("random"); },
                        [](heuristic::Random2) { return std::string("random2"); },
                    },
                    h);
}

std::uint64_t stream_seed(const CurrentHeuristic& h) {
  if (const auto* r = std::get_if<heuristic::Random>(&h)) return r->stream_seed;
  if (const auto* r = std::get_if<heuristic::Random2>(&h)) return r->stream_seed;
  return 0;
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CurrentHeuristic heuristic_for_agent(int agent_id, std::uint64_t master_seed) {
  if (agent_id < 1) throw InvalidArgument("agent ids start at 1");
  const auto seed = mix_seed(master_seed, static_cast<std::uint64_t>(agent_id));
  switch ((agent_id - 1) % 7) {
    case 0: return heuristic::Velocity{};
    case 1: return heuristic::PathLength{};
    case 2: return heuristic::GoalVector{};
    case 3: return heuristic::ObstacleDistance{};
    case 4: return heuristic::PathLengthObstacleDistance{};
    case 5: return heuristic::Random{seed};
    default: return heuristic::Random2{seed};
  }
}

Vec3 compute_current(const CurrentHeuristic& h, const AgentKinematics<double>& kin, const Sphere& obs,
                     const Vec3& goal, std::span<const Sphere> others, RngState& rng) {
  const Vec3 d = toward_obstacle(kin, obs);
  return std::visit(overloaded{
                        [&](heuristic::Velocity) { return velocity_current(kin, d); },
                        [&](heuristic::PathLength) { return path_length_current(kin, d, goal); },
                        [&](heuristic::GoalVector) { return goal_current(kin, d, goal); },
                        [&](heuristic::ObstacleDistance) {
                          return obstacle_distance_current(kin, obs, d, goal, others);
                        },
                        [&](heuristic::PathLengthObstacleDistance) {
                          const Vec3 sum = path_length_current(kin, d, goal) +
                                           obstacle_distance_current(kin, obs, d, goal, others);
                          return unit_or_fallback(sum, d);
                        },
                        [&](heuristic::Random) { return random_current(rng); },
                        [&](heuristic::Random2) { return random_current(rng); },
                    },
                    h);
}

}  // namespace cfplan
