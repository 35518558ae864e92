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

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cfplan {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
using Vec3 = Vector3<double>;

/// Thrown by constructors and operations whose domain invariants are violated.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool all_finite(const Vec3& v) { return v.allFinite(); }

template <typename Scalar = double>
struct SphereObstacle {
  Vector3<Scalar> center = Vector3<Scalar>::Zero();
  Scalar radius = Scalar(1);

  /// Signed distance from `x` to the sphere surface (negative inside).
  Scalar surface_distance(const Vector3<Scalar>& x) const {
    return (x - center).norm() - radius;
  }

  bool operator==(const SphereObstacle& o) const {
    return center == o.center && radius == o.radius;
  }
};

using Sphere = SphereObstacle<double>;

struct WorkspaceBounds {
  Vec3 min = Vec3::Constant(-1.0);
  Vec3 max = Vec3::Constant(1.0);

  bool valid() const { return (min.array() < max.array()).all() && min.allFinite() && max.allFinite(); }
  bool contains(const Vec3& x) const {
    return (x.array() >= min.array()).all() && (x.array() <= max.array()).all();
  }
  Vec3 extent() const { return max - min; }
};

/// Minimum surface distance from `x` over `obstacles`; +inf when empty.
inline double min_surface_distance(const std::vector<Sphere>& obstacles, const Vec3& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : obstacles) best = std::min(best, o.surface_distance(x));
  return best;
}

struct Scene {
  std::vector<Sphere> obstacles;
  Vec3 start = Vec3::Zero();
  Vec3 goal = Vec3::Zero();
  WorkspaceBounds workspace;

  /// Throws InvalidArgument unless start/goal are in free space inside the workspace.
  void validate() const;
};

struct Cuboid {
  Vec3 center = Vec3::Zero();
  Vec3 half_extents = Vec3::Constant(0.5);
};

struct SpherePrimitive {
  Vec3 center = Vec3::Zero();
  double radius = 0.5;
};

struct Cylinder {
  Vec3 center = Vec3::Zero();
  Vec3 axis_unit = Vec3::UnitZ();
  double radius = 0.5;
  double half_length = 0.5;
};

using PrimitiveShape = std::variant<Cuboid, SpherePrimitive, Cylinder>;

/// Throws InvalidArgument when extents/radii are non-positive or a cylinder axis is not unit length.
void validate_primitive(const PrimitiveShape& shape);

/// Euclidean distance from `x` to the solid shape (0 inside).
double distance_to_shape(const PrimitiveShape& shape, const Vec3& x);

/// True when `x` lies inside or on the solid shape.
bool contains(const PrimitiveShape& shape, const Vec3& x);

/// Axis-aligned bounding box of the solid shape.
WorkspaceBounds bounding_box(const PrimitiveShape& shape);

struct PointCloud {
  std::vector<Vec3> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<double> depths;  // row-major, meters, 0 = invalid
  double fx = 1.0, fy = 1.0, cx = 0.0, cy = 0.0;
  Eigen::Isometry3d camera_to_base = Eigen::Isometry3d::Identity();

  void validate() const;
};

}  // namespace cfplan
