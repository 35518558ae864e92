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

#pragma once

#include "cfplan/geometry.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cfplan {

class PlacementFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pinhole back-projection of every valid pixel into the robot base frame.
PointCloud depth_to_cloud(const DepthImage& img);

/// Farthest-point subsampling to at most `n` points.
///
/// Sampling starts from the point nearest the centroid and repeatedly adds the
/// point farthest from the selected set. Ties resolve to the lower input index,
/// so the result does not depend on `seed`; it is kept so callers can thread a
/// scene seed through uniformly.
PointCloud subsample(const PointCloud& cloud, std::size_t n, std::uint64_t seed = 0);

/// Edge of the cubic lattice whose cells are circumscribed by spheres of `voxel_radius`.
inline double lattice_edge(double voxel_radius) { return 2.0 * voxel_radius / std::sqrt(3.0); }

/// Occupancy grid of spherical voxels. Output is sorted by lattice index.
std::vector<Sphere> voxelize_point_cloud(const PointCloud& cloud, double voxel_radius);

/// Sphere cover of a primitive on the same lattice as voxelize_point_cloud.
std::vector<Sphere> decompose_primitive(const PrimitiveShape& shape, double voxel_radius);

struct SceneRandomizerConfig {
  WorkspaceBounds workspace{Vec3(-0.6, -0.8, 0.0), Vec3(1.0, 0.8, 1.2)};
  Vec3 start = Vec3(0.35, 0.0, 0.55);
  /// Goals are drawn uniformly from this box.
  WorkspaceBounds goal_region{Vec3(0.45, -0.45, 0.25), Vec3(0.75, 0.45, 0.8)};
  /// Pillar, wall and desk analogues.
  std::vector<Cuboid> fixed_primitives{
      {Vec3(-0.25, 0.35, 0.5), Vec3(0.05, 0.05, 0.5)},
      {Vec3(-0.5, 0.0, 0.6), Vec3(0.04, 0.6, 0.5)},
      {Vec3(0.55, 0.0, 0.04), Vec3(0.35, 0.6, 0.04)},
  };
  /// Floating primitives are centered inside this box.
  WorkspaceBounds floating_region{Vec3(0.2, -0.5, 0.2), Vec3(0.85, 0.5, 0.9)};
  int min_floating = 5;
  int max_floating = 10;
  double min_radius = 0.03;
  double max_radius = 0.08;
  double min_half_length = 0.05;
  double max_half_length = 0.15;
  double voxel_radius = 0.04;
  double min_clearance = 0.08;
  int max_rejections = 1000;

  void validate() const;
};

/// Randomized desk-scale scene, a pure function of (seed, cfg). The accepted
/// floating primitives are copied to `floating` when it is non-null.
Scene randomize_scene(std::uint64_t seed, const SceneRandomizerConfig& cfg,
                      std::vector<PrimitiveShape>* floating = nullptr);

/// Synthetic sensor cloud of the scene: points on the exposed obstacle surfaces,
/// densified until at least `n_points` exist and then subsampled to exactly `n_points`.
/// An obstacle-free scene yields points on the workspace floor.
PointCloud synthesize_cloud(const Scene& scene, std::size_t n_points = 2500, double density = 400.0);

}  // namespace cfplan
