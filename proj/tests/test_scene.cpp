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

#include "cfplan/io.hpp"
#include "cfplan/scene.hpp"

#include <random>

using namespace cfplan;

namespace {

DepthImage camera(int w, int h) {
  DepthImage img;
  img.width = w;
  img.height = h;
  img.depths.assign(static_cast<std::size_t>(w * h), 0.0);
  img.fx = img.fy = 500.0;
  img.cx = 320.0;
  img.cy = 240.0;
  return img;
}

PointCloud random_cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i) c.points.emplace_back(u(rng), u(rng), u(rng));
  return c;
}

}  // namespace

TEST_CASE("depth_to_cloud back-projects through the pinhole model") {
  DepthImage img = camera(900, 480);
  img.depths[240 * 900 + 320] = 1.0;
  img.depths[240 * 900 + 820] = 2.0;
  const PointCloud c = depth_to_cloud(img);
  REQUIRE(c.size() == 2);
  CHECK((c.points[0] - Vec3(0, 0, 1)).norm() < 1e-12);
  CHECK((c.points[1] - Vec3(2, 0, 2)).norm() < 1e-12);

  img.camera_to_base = Eigen::Translation3d(0.1, 0.2, 0.3) * Eigen::AngleAxisd(M_PI / 2, Vec3::UnitZ());
  const PointCloud moved = depth_to_cloud(img);
  CHECK((moved.points[1] - Vec3(0.1, 2.2, 2.3)).norm() < 1e-12);

  std::fill(img.depths.begin(), img.depths.end(), 0.0);
  CHECK(depth_to_cloud(img).empty());

  img.depths.pop_back();
  CHECK_THROWS_AS(depth_to_cloud(img), InvalidArgument);
}

TEST_CASE("subsample") {
  PointCloud three{{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)}};
  CHECK(subsample(three, 5).points == three.points);

  const PointCloud big = random_cloud(10000, 3);
  const PointCloud s = subsample(big, 2500, 11);
  REQUIRE(s.size() == 2500);
  for (const auto& p : s.points)
    CHECK(std::find(big.points.begin(), big.points.end(), p) != big.points.end());
  CHECK(subsample(big, 2500, 99).points == s.points);

  PointCloud twins{{Vec3(1, 2, 3), Vec3(1, 2, 3)}};
  CHECK(subsample(twins, 1).points.front() == Vec3(1, 2, 3));

  CHECK_THROWS_AS(subsample(three, 0), InvalidArgument);
}

TEST_CASE("subsample picks the farthest remaining point each round") {
  const PointCloud cloud = random_cloud(300, 5);
  const PointCloud s = subsample(cloud, 20);
  // Brute force: every pick maximizes the distance to the already chosen set.
  for (std::size_t k = 1; k < s.size(); ++k) {
    auto gap = [&](const Vec3& p) {
      double m = 1e300;
      for (std::size_t j = 0; j < k; ++j) m = std::min(m, (p - s.points[j]).squaredNorm());
      return m;
    };
    double best = 0.0;
    for (const auto& p : cloud.points) best = std::max(best, gap(p));
    CHECK(gap(s.points[k]) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("voxelize_point_cloud") {
  CHECK(voxelize_point_cloud({}, 0.03).empty());

  const double e = lattice_edge(0.03);
  CHECK(e == doctest::Approx(0.034641016).epsilon(1e-8));
  auto one = voxelize_point_cloud(PointCloud{{Vec3(0.01, 0.01, 0.01)}}, 0.03);
  REQUIRE(one.size() == 1);
  CHECK((one[0].center - Vec3::Constant(e / 2)).norm() < 1e-15);
  CHECK(one[0].radius == 0.03);

  CHECK(voxelize_point_cloud(PointCloud{{Vec3(0.01, 0.01, 0.01), Vec3(0.02, 0.001, 0.03)}}, 0.03).size() == 1);

  SUBCASE("every input point is covered") {
    const PointCloud c = random_cloud(2000, 8);
    const auto spheres = voxelize_point_cloud(c, 0.05);
    for (const auto& p : c.points) CHECK(min_surface_distance(spheres, p) <= 1e-12);
  }
}

TEST_CASE("decompose_primitive") {
  const auto small = decompose_primitive(SpherePrimitive{Vec3(1, 2, 3), 0.02}, 0.03);
  REQUIRE(small.size() == 1);
  CHECK(small[0].center == Vec3(1, 2, 3));

  const auto cube = decompose_primitive(Cuboid{Vec3::Zero(), Vec3::Constant(0.5)}, 0.03);
  CHECK(cube.size() == oracle::cuboid_cell_count({0, 0, 0}, {0.5, 0.5, 0.5}, 0.03));

  const auto box = decompose_primitive(Cuboid{Vec3(0.31, -0.2, 0.07), Vec3(0.1, 0.25, 0.04)}, 0.04);
  CHECK(box.size() == oracle::cuboid_cell_count({0.31, -0.2, 0.07}, {0.1, 0.25, 0.04}, 0.04));

  const Cylinder cyl{Vec3::Zero(), Vec3::UnitZ(), 0.05, 0.2};
  const auto rod = decompose_primitive(cyl, 0.03);
  REQUIRE(!rod.empty());
  for (const auto& s : rod) CHECK(s.center.head<2>().norm() <= 0.05 + 0.03 + 1e-12);

  SUBCASE("spheres cover the shape and touch its dilation") {
    const Cylinder tilted{Vec3(0.1, 0.2, 0.3), Vec3(1, 1, 1).normalized(), 0.06, 0.15};
    const auto cover = decompose_primitive(tilted, 0.025);
    for (const auto& s : cover) CHECK(distance_to_shape(tilted, s.center) <= 0.025 + 1e-12);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    int inside = 0;
    for (int i = 0; i < 4000; ++i) {
      const Vec3 p = tilted.center + Vec3(u(rng), u(rng), u(rng));
      if (!contains(tilted, p)) continue;
      ++inside;
      CHECK(min_surface_distance(cover, p) <= 1e-12);
    }
    CHECK(inside > 50);
  }

  CHECK_THROWS_AS(decompose_primitive(Cylinder{Vec3::Zero(), Vec3(1, 1, 0), 0.1, 0.1}, 0.03), InvalidArgument);
  CHECK_THROWS_AS(decompose_primitive(Cuboid{}, 0.0), InvalidArgument);
}

TEST_CASE("randomize_scene") {
  SceneRandomizerConfig cfg;
  const Scene a = randomize_scene(42, cfg);
  const Scene b = randomize_scene(42, cfg);
  CHECK(scene_to_json(a).dump() == scene_to_json(b).dump());
  CHECK(scene_to_json(a).dump() != scene_to_json(randomize_scene(43, cfg)).dump());

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::vector<PrimitiveShape> floating;
    const Scene s = randomize_scene(seed, cfg, &floating);
    CHECK(floating.size() >= 5);
    CHECK(floating.size() <= 10);
    CHECK(cfg.goal_region.contains(s.goal));
    CHECK(s.start == cfg.start);
    for (const auto& o : s.obstacles) {
      CHECK(o.surface_distance(s.start) >= cfg.min_clearance);
      CHECK(o.surface_distance(s.goal) >= cfg.min_clearance);
    }
    CHECK_NOTHROW(s.validate());
  }
}

TEST_CASE("randomize_scene gives up after repeated rejections") {
  SceneRandomizerConfig cfg;
  cfg.fixed_primitives.clear();
  cfg.min_clearance = 5.0;  // nothing fits
  cfg.max_rejections = 20;
  CHECK_THROWS_AS(randomize_scene(1, cfg), PlacementFailure);
}

TEST_CASE("synthesize_cloud") {
  Scene s;
  s.workspace = {Vec3(-1, -1, 0), Vec3(1, 1, 1)};
  s.start = Vec3(-0.5, 0, 0.5);
  s.goal = Vec3(0.5, 0, 0.5);
  const PointCloud floor = synthesize_cloud(s, 100);
  CHECK(floor.size() == 100);
  for (const auto& p : floor.points) CHECK(p.z() == 0.0);

  s.obstacles = {{Vec3(0, 0, 0.5), 0.1}, {Vec3(0, 0.12, 0.5), 0.1}};
  const PointCloud c = synthesize_cloud(s, 2500, 400);
  CHECK(c.size() == 2500);
  for (const auto& p : c.points) {
    CHECK(std::abs(min_surface_distance(s.obstacles, p)) < 1e-9);
  }
}
