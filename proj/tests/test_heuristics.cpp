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

#include "cfplan/heuristics.hpp"

#include <random>
#include <set>

using namespace cfplan;

namespace {

AgentKinematics<double> at(const Vec3& x, const Vec3& v) { return {x, v}; }

Vec3 induced(const Vec3& v, const Vec3& c) { return v.cross(c.cross(v)); }

}  // namespace

TEST_CASE("velocity and goal heuristics") {
  RngState rng(0);
  const Sphere obs{Vec3(0, 1, 0), 0.3};
  const Vec3 c = compute_current(heuristic::Velocity{}, at(Vec3::Zero(), Vec3(1, 0, 0)), obs, Vec3(5, 0, 0), {}, rng);
  CHECK((c - Vec3(0, 0, -1)).norm() < 1e-12);

  // Goal straight behind the obstacle: the defining cross product vanishes.
  const Vec3 g = compute_current(heuristic::GoalVector{}, at(Vec3::Zero(), Vec3::Zero()), obs, Vec3(0, 3, 0), {}, rng);
  CHECK(g.norm() == doctest::Approx(1.0));
  CHECK(std::abs(g.dot(Vec3(0, 1, 0))) < 1e-12);
  CHECK((g - Vec3(0, 1, 0).cross(Vec3::UnitZ()).normalized()).norm() < 1e-12);

  // Obstacle straight above: crossing with e_z degenerates too, so e_x is used.
  const Sphere above{Vec3(0, 0, 1), 0.3};
  const Vec3 h = compute_current(heuristic::GoalVector{}, at(Vec3::Zero(), Vec3::Zero()), above, Vec3(0, 0, 3), {}, rng);
  CHECK((h - Vec3(0, 0, 1).cross(Vec3::UnitX()).normalized()).norm() < 1e-12);
}

TEST_CASE("obstacle-distance heuristic") {
  RngState rng(0);
  const Sphere obs{Vec3(0, 1, 0), 0.3};
  const auto kin = at(Vec3::Zero(), Vec3(1, 0, 0));
  const Vec3 goal(2, 2, 0);
  const Vec3 alone = compute_current(heuristic::ObstacleDistance{}, kin, obs, goal, std::vector<Sphere>{obs}, rng);
  CHECK((alone - compute_current(heuristic::GoalVector{}, kin, obs, goal, {}, rng)).norm() < 1e-15);

  const std::vector<Sphere> others{obs, {Vec3(0, 0, 2), 0.2}, {Vec3(3, 3, 3), 0.2}};
  const Vec3 c = compute_current(heuristic::ObstacleDistance{}, kin, obs, goal, others, rng);
  const Vec3 expected = Vec3(0, 1, 0).cross(Vec3(0, 0, -2)).normalized();
  CHECK((c - expected).norm() < 1e-12);
}

TEST_CASE("path-length heuristic prefers the goal-ward sign") {
  RngState rng(0);
  std::mt19937_64 gen(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const auto kin = at(Vec3(n(gen), n(gen), n(gen)), Vec3(n(gen), n(gen), n(gen)));
    const Sphere obs{kin.position + 2.0 * Vec3(n(gen), n(gen), n(gen)).normalized(), 0.5};
    const Vec3 goal(n(gen), n(gen), n(gen));
    const Vec3 c = compute_current(heuristic::PathLength{}, kin, obs, goal, {}, rng);
    const Vec3 to_goal = goal - kin.position;
    CHECK(induced(kin.velocity, c).dot(to_goal) >= induced(kin.velocity, -c).dot(to_goal));
    const Vec3 v = compute_current(heuristic::Velocity{}, kin, obs, goal, {}, rng);
    CHECK(((c - v).norm() < 1e-15 || (c + v).norm() < 1e-15));
  }
}

TEST_CASE("every heuristic returns a unit vector") {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int id = 1; id <= 7; ++id) {
    const auto h = heuristic_for_agent(id, 5);
    RngState rng(stream_seed(h));
    for (int i = 0; i < 300; ++i) {
      const Vec3 v = i % 10 == 0 ? Vec3::Zero() : Vec3(n(gen), n(gen), n(gen));
      const auto kin = at(Vec3(n(gen), n(gen), n(gen)), v);
      const Sphere obs{kin.position + 1.5 * Vec3(n(gen), n(gen), n(gen)).normalized(), 0.4};
      const std::vector<Sphere> others{obs, {Vec3(n(gen), n(gen), n(gen)), 0.1}};
      const Vec3 c = compute_current(h, kin, obs, Vec3(n(gen), n(gen), n(gen)), others, rng);
      CHECK(std::abs(c.norm() - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("random heuristics") {
  const auto h = heuristic_for_agent(6, 1);
  const auto h2 = heuristic_for_agent(7, 1);
  CHECK(std::holds_alternative<heuristic::Random>(h));
  CHECK(std::holds_alternative<heuristic::Random2>(h2));
  CHECK(stream_seed(h) != stream_seed(h2));

  RngState a(stream_seed(h)), b(stream_seed(h));
  const Sphere obs{Vec3(0, 1, 0), 0.3};
  const auto kin = at(Vec3::Zero(), Vec3(1, 0, 0));
  Vec3 mean = Vec3::Zero();
  for (int i = 0; i < 1000; ++i) {
    const Vec3 c = compute_current(h, kin, obs, Vec3::Zero(), {}, a);
    CHECK(std::abs(c.norm() - 1.0) < 1e-12);
    CHECK(c == compute_current(h, kin, obs, Vec3::Zero(), {}, b));
    mean += c;
  }
  CHECK((mean / 1000.0).norm() < 0.1);
}

TEST_CASE("agent heuristic assignment") {
  CHECK(heuristic_name(heuristic_for_agent(1, 0)) == "velocity");
  CHECK(heuristic_name(heuristic_for_agent(2, 0)) == "path_length");
  CHECK(heuristic_name(heuristic_for_agent(3, 0)) == "goal_vector");
  CHECK(heuristic_name(heuristic_for_agent(4, 0)) == "obstacle_distance");
  CHECK(heuristic_name(heuristic_for_agent(5, 0)) == "path_length_obstacle_distance");
  CHECK(heuristic_name(heuristic_for_agent(6, 0)) == "random");
  CHECK(heuristic_name(heuristic_for_agent(7, 0)) == "random2");
  CHECK(heuristic_name(heuristic_for_agent(8, 0)) == "velocity");
  CHECK_THROWS_AS(heuristic_for_agent(0, 0), InvalidArgument);

  std::set<std::uint64_t> seeds;
  for (std::uint64_t m = 0; m < 50; ++m) seeds.insert(stream_seed(heuristic_for_agent(6, m)));
  CHECK(seeds.size() == 50);
}
