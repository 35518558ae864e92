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
#include "oracles.hpp"

#include "cfplan/cost.hpp"

#include <random>

using namespace cfplan;

namespace {

oracle::P3 p3(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

}  // namespace

TEST_CASE("j_pmaf on hand-checked paths") {
  Scene s;
  s.workspace = {Vec3(-2, -2, -2), Vec3(2, 2, 2)};
  s.goal = Vec3(1, 0, 0);
  s.obstacles = {{Vec3(0.5, 1, 0), 0.1}};
  const std::vector<Vec3> two{Vec3(0, 0, 0), Vec3(1, 0, 0)};
  const auto terms = j_pmaf_terms(make_trajectory(two, s), s, s.goal);
  CHECK(terms.path_length == doctest::Approx(1.0));
  CHECK(terms.goal == 0.0);
  CHECK(terms.smoothness == 0.0);
  const double d1 = std::sqrt(0.25 + 1.0) - 0.1;
  CHECK(terms.clearance == doctest::Approx(1.0 / d1).epsilon(1e-14));

  Scene empty = s;
  empty.obstacles.clear();
  const std::vector<Vec3> at_goal{s.goal};
  CHECK(j_pmaf(make_trajectory(at_goal, empty), empty, s.goal, {1, 1, 1, 1}) == 0.0);

  std::vector<Vec3> line;
  for (int i = 0; i < 8; ++i) line.emplace_back(0.1 * i, 0.05 * i, 0);
  CHECK(j_pmaf(make_trajectory(line, empty), empty, s.goal, {0, 0, 1, 0}) == doctest::Approx(0.0).epsilon(1e-30));
}

TEST_CASE("j_pmaf properties") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0.0, 0.5);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    Scene s;
    s.workspace = {Vec3(-5, -5, -5), Vec3(5, 5, 5)};
    s.goal = Vec3(n(rng), n(rng), n(rng));
    s.obstacles = {{Vec3(n(rng), n(rng), n(rng)), 0.1}, {Vec3(n(rng), n(rng), n(rng)), 0.2}};
    std::vector<Vec3> xs;
    for (int i = 0; i < 10; ++i) xs.emplace_back(n(rng), n(rng), n(rng));
    const TrajectoryCostWeights w{u(rng), u(rng), u(rng), u(rng)};
    const double j = j_pmaf(make_trajectory(xs, s), s, s.goal, w);
    CHECK(j >= 0.0);

    std::vector<oracle::P3> px;
    for (const auto& x : xs) px.push_back(p3(x));
    std::vector<oracle::Ball> balls;
    for (const auto& o : s.obstacles) balls.push_back({p3(o.center), o.radius});
    const double want = oracle::j_pmaf(px, balls, p3(s.goal), w.w_cl, w.w_pl, w.w_sm, w.w_gd);
    CHECK(std::abs(j - want) <= 1e-12 * want);

    TrajectoryCostWeights w2 = w;
    w2.w_sm *= 2.0;
    const auto t = j_pmaf_terms(make_trajectory(xs, s), s, s.goal);
    CHECK(j_pmaf(make_trajectory(xs, s), s, s.goal, w2) == doctest::Approx(j + w.w_sm * t.smoothness));

    const Vec3 shift(n(rng), n(rng), n(rng));
    Scene moved = s;
    moved.goal += shift;
    for (auto& o : moved.obstacles) o.center += shift;
    std::vector<Vec3> ys = xs;
    for (auto& y : ys) y += shift;
    CHECK(j_pmaf(make_trajectory(ys, moved), moved, moved.goal, w) == doctest::Approx(j).epsilon(1e-9));
  }
}

TEST_CASE("j_pmaf clamps collisions") {
  Scene s;
  s.workspace = {Vec3(-2, -2, -2), Vec3(2, 2, 2)};
  s.obstacles = {{Vec3::Zero(), 0.5}};
  const std::vector<Vec3> through{Vec3(-1, 0, 0), Vec3(0, 0, 0)};
  const double j = j_pmaf(make_trajectory(through, s), s, s.goal, {1, 0, 0, 0});
  CHECK(std::isfinite(j));
  CHECK(j == doctest::Approx(1e6));
  CHECK_THROWS_AS(TrajectoryCostWeights({-1, 0, 0, 0}).validate(), InvalidArgument);
}
