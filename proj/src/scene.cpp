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

#include "cfplan/scene.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <random>
#include <set>
#include <string>

namespace cfplan {

namespace {

using CellIndex = std::array<long long, 3>;

CellIndex cell_of(const Vec3& p, double edge) {
  return {static_cast<long long>(std::floor(p.x() / edge)), static_cast<long long>(std::floor(p.y() / edge)),
          static_cast<long long>(std::floor(p.z() / edge))};
}

Vec3 cell_center(const CellIndex& c, double edge) {
  return Vec3((static_cast<double>(c[0]) + 0.5) * edge, (static_cast<double>(c[1]) + 0.5) * edge,
              (static_cast<double>(c[2]) + 0.5) * edge);
}

Vec3 uniform_in(const WorkspaceBounds& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec3 p;
  for (int k = 0; k < 3; ++k) p[k] = box.min[k] + u(rng) * (box.max[k] - box.min[k]);
  return p;
}

double uniform(double lo, double hi, std::mt19937_64& rng) {
  return lo + std::uniform_real_distribution<double>(0.0, 1.0)(rng) * (hi - lo);
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Vec3 v(n(rng), n(rng), n(rng));
    const double len = v.norm();
    if (len > 1e-12) return v / len;
  }
}

bool clear_of(const std::vector<Sphere>& spheres, const Vec3& p, double clearance) {
  return std::all_of(spheres.begin(), spheres.end(),
                     [&](const Sphere& s) { return s.surface_distance(p) >= clearance; });
}

// Roughly uniform points on a unit sphere (golden-angle spiral).
std::vector<Vec3> fibonacci_sphere(std::size_t n) {
  std::vector<Vec3> pts;
  pts.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

}  // namespace

PointCloud depth_to_cloud(const DepthImage& img) {
  img.validate();
  PointCloud cloud;
  for (int v = 0; v < img.height; ++v) {
    for (int u = 0; u < img.width; ++u) {
      const double d = img.depths[static_cast<std::size_t>(v) * img.width + u];
      if (!(d > 0.0) || !std::isfinite(d)) continue;
      const Vec3 cam((u - img.cx) * d / img.fx, (v - img.cy) * d / img.fy, d);
      cloud.points.push_back(img.camera_to_base * cam);
    }
  }
  return cloud;
}

PointCloud subsample(const PointCloud& cloud, std::size_t n, std::uint64_t /*seed*/) {
  if (n == 0) throw InvalidArgument("subsample: n must be >= 1");
  const std::size_t count = cloud.size();
  if (count <= n) return cloud;

  Vec3 centroid = Vec3::Zero();
  for (const auto& p : cloud.points) centroid += p;
  centroid /= static_cast<double>(count);

  std::size_t first = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double d2 = (cloud.points[i] - centroid).squaredNorm();
    if (d2 < best) {
      best = d2;
      first = i;
    }
  }

  PointCloud out;
  out.points.reserve(n);
  std::vector<double> nearest(count, std::numeric_limits<double>::infinity());
  std::size_t pick = first;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 chosen = cloud.points[pick];
    out.points.push_back(chosen);
    nearest[pick] = -1.0;
    std::size_t next = 0;
    double far = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
      if (nearest[i] < 0.0) continue;
      nearest[i] = std::min(nearest[i], (cloud.points[i] - chosen).squaredNorm());
      if (nearest[i] > far) {
        far = nearest[i];
        next = i;
      }
    }
    pick = next;
  }
  return out;
}

std::vector<Sphere> voxelize_point_cloud(const PointCloud& cloud, double voxel_radius) {
  if (!(voxel_radius > 0.0)) throw InvalidArgument("voxelize: voxel radius must be > 0");
  const double edge = lattice_edge(voxel_radius);
  std::set<CellIndex> cells;
  for (const auto& p : cloud.points) cells.insert(cell_of(p, edge));
  std::vector<Sphere> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back({cell_center(c, edge), voxel_radius});
  return out;
}

std::vector<Sphere> decompose_primitive(const PrimitiveShape& shape, double voxel_radius) {
  if (!(voxel_radius > 0.0)) throw InvalidArgument("decompose: voxel radius must be > 0");
  validate_primitive(shape);
  if (const auto* s = std::get_if<SpherePrimitive>(&shape); s && s->radius <= voxel_radius) {
    return {{s->center, voxel_radius}};
  }
  const double edge = lattice_edge(voxel_radius);
  const WorkspaceBounds box = bounding_box(shape);
  const CellIndex lo = cell_of(box.min.array() - voxel_radius, edge);
  const CellIndex hi = cell_of(box.max.array() + voxel_radius, edge);
  std::vector<Sphere> out;
  for (long long i = lo[0]; i <= hi[0]; ++i)
    for (long long j = lo[1]; j <= hi[1]; ++j)
      for (long long k = lo[2]; k <= hi[2]; ++k) {
        const Vec3 c = cell_center({i, j, k}, edge);
        if (distance_to_shape(shape, c) <= voxel_radius) out.push_back({c, voxel_radius});
      }
  return out;
}

void SceneRandomizerConfig::validate() const {
  if (!workspace.valid() || !goal_region.valid() || !floating_region.valid())
    throw InvalidArgument("randomizer: workspace, goal and floating regions must be valid boxes");
  if (!workspace.contains(start)) throw InvalidArgument("randomizer: start outside workspace");
  if (!workspace.contains(goal_region.min) || !workspace.contains(goal_region.max))
    throw InvalidArgument("randomizer: goal region must lie inside the workspace");
  if (min_floating < 0 || min_floating > max_floating) throw InvalidArgument("randomizer: bad floating count range");
  if (!(min_radius > 0.0) || min_radius > max_radius) throw InvalidArgument("randomizer: bad radius range");
  if (!(min_half_length > 0.0) || min_half_length > max_half_length)
    throw InvalidArgument("randomizer: bad half-length range");
  if (!(voxel_radius > 0.0)) throw InvalidArgument("randomizer: voxel radius must be > 0");
  if (min_clearance < 0.0) throw InvalidArgument("randomizer: min clearance must be >= 0");
  if (max_rejections < 1) throw InvalidArgument("randomizer: max_rejections must be >= 1");
}

Scene randomize_scene(std::uint64_t seed, const SceneRandomizerConfig& cfg, std::vector<PrimitiveShape>* floating) {
  cfg.validate();
  std::mt19937_64 rng(seed);

  Scene scene;
  scene.workspace = cfg.workspace;
  scene.start = cfg.start;

  for (const auto& c : cfg.fixed_primitives) {
    auto spheres = decompose_primitive(c, cfg.voxel_radius);
    scene.obstacles.insert(scene.obstacles.end(), spheres.begin(), spheres.end());
  }
  if (!clear_of(scene.obstacles, scene.start, cfg.min_clearance))
    throw PlacementFailure("randomizer: fixed primitives violate start clearance");

  int rejections = 0;
  for (;;) {
    const Vec3 goal = uniform_in(cfg.goal_region, rng);
    if (clear_of(scene.obstacles, goal, cfg.min_clearance)) {
      scene.goal = goal;
      break;
    }
    if (++rejections >= cfg.max_rejections) throw PlacementFailure("randomizer: could not place goal");
  }

  const int n_floating = std::uniform_int_distribution<int>(cfg.min_floating, cfg.max_floating)(rng);
  if (floating) floating->clear();
  rejections = 0;
  for (int placed = 0; placed < n_floating;) {
    const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
    const Vec3 center = uniform_in(cfg.floating_region, rng);
    PrimitiveShape shape;
    switch (kind) {
      case 0: {
        Vec3 half;
        for (int k = 0; k < 3; ++k) half[k] = uniform(cfg.min_half_length, cfg.max_half_length, rng);
        shape = Cuboid{center, half};
        break;
      }
      case 1:
        shape = SpherePrimitive{center, uniform(cfg.min_radius, cfg.max_radius, rng)};
        break;
      default: {
        const double radius = uniform(cfg.min_radius, cfg.max_radius, rng);
        const double half_length = uniform(cfg.min_half_length, cfg.max_half_length, rng);
        shape = Cylinder{center, random_unit(rng), radius, half_length};
        break;
      }
    }
    auto spheres = decompose_primitive(shape, cfg.voxel_radius);
    if (clear_of(spheres, scene.start, cfg.min_clearance) && clear_of(spheres, scene.goal, cfg.min_clearance)) {
      scene.obstacles.insert(scene.obstacles.end(), spheres.begin(), spheres.end());
      if (floating) floating->push_back(shape);
      ++placed;
      rejections = 0;
    } else if (++rejections >= cfg.max_rejections) {
      throw PlacementFailure("randomizer: " + std::to_string(rejections) + " consecutive rejected placements");
    }
  }

  scene.validate();
  return scene;
}

PointCloud synthesize_cloud(const Scene& scene, std::size_t n_points, double density) {
  if (n_points == 0) throw InvalidArgument("synthesize_cloud: n_points must be >= 1");
  PointCloud raw;
  if (scene.obstacles.empty()) {
    // Nothing but the table top is visible.
    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_points))));
    const Vec3 ext = scene.workspace.extent();
    for (std::size_t i = 0; i < side; ++i)
      for (std::size_t j = 0; j < side; ++j)
        raw.points.emplace_back(scene.workspace.min.x() + (i + 0.5) / side * ext.x(),
                                scene.workspace.min.y() + (j + 0.5) / side * ext.y(), scene.workspace.min.z());
    return subsample(raw, n_points);
  }

  for (double scale = 1.0; scale <= 256.0; scale *= 2.0) {
    raw.points.clear();
    for (std::size_t s = 0; s < scene.obstacles.size(); ++s) {
      const auto& o = scene.obstacles[s];
      const double area = 4.0 * std::numbers::pi * o.radius * o.radius;
      const auto count = static_cast<std::size_t>(std::ceil(area * density * scale));
      for (const auto& u : fibonacci_sphere(count)) {
        const Vec3 p = o.center + o.radius * u;
        bool hidden = false;
        for (std::size_t t = 0; t < scene.obstacles.size() && !hidden; ++t)
          hidden = t != s && scene.obstacles[t].surface_distance(p) < -1e-9;
        if (!hidden) raw.points.push_back(p);
      }
    }
    if (raw.size() >= n_points) break;
  }
  // Pathological coverage (every point hidden): pad cyclically.
  for (std::size_t i = 0; raw.size() < n_points; ++i) {
    if (raw.empty()) raw.points.push_back(scene.obstacles.front().center);
    raw.points.push_back(raw.points[i % raw.size()]);
  }
  return subsample(raw, n_points);
}

}  // namespace cfplan
