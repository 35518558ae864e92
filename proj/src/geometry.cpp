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

#include "cfplan/geometry.hpp"

#include <cmath>

namespace cfplan {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void Scene::validate() const {
  if (!workspace.valid()) throw InvalidArgument("scene: workspace min must be < max on every axis");
  if (!all_finite(start) || !all_finite(goal)) throw InvalidArgument("scene: start/goal must be finite");
  if (!workspace.contains(start)) throw InvalidArgument("scene: start outside workspace");
  if (!workspace.contains(goal)) throw InvalidArgument("scene: goal outside workspace");
  for (const auto& o : obstacles) {
    if (!(o.radius > 0.0) || !all_finite(o.center)) throw InvalidArgument("scene: obstacle radius must be > 0");
    if (!(o.surface_distance(start) > 0.0)) throw InvalidArgument("scene: start inside an obstacle");
    if (!(o.surface_distance(goal) > 0.0)) throw InvalidArgument("scene: goal inside an obstacle");
  }
}

void validate_primitive(const PrimitiveShape& shape) {
  std::visit(overloaded{
                 [](const Cuboid& c) {
                   if (!(c.half_extents.array() > 0.0).all()) throw InvalidArgument("cuboid: half extents must be > 0");
                 },
                 [](const SpherePrimitive& s) {
                   if (!(s.radius > 0.0)) throw InvalidArgument("sphere: radius must be > 0");
                 },
                 [](const Cylinder& c) {
                   if (!(c.radius > 0.0) || !(c.half_length > 0.0))
                     throw InvalidArgument("cylinder: radius and half length must be > 0");
                   if (std::abs(c.axis_unit.norm() - 1.0) > 1e-9) throw InvalidArgument("cylinder: axis must be unit");
                 },
             },
             shape);
}

double distance_to_shape(const PrimitiveShape& shape, const Vec3& x) {
  return std::visit(overloaded{
                        [&](const Cuboid& c) {
                          const Vec3 q = (x - c.center).cwiseAbs() - c.half_extents;
                          return q.cwiseMax(0.0).norm();
                        },
                        [&](const SpherePrimitive& s) { return std::max((x - s.center).norm() - s.radius, 0.0); },
                        [&](const Cylinder& c) {
                          const Vec3 v = x - c.center;
                          const double along = v.dot(c.axis_unit);
                          const double radial = (v - along * c.axis_unit).norm();
                          const double dr = std::max(radial - c.radius, 0.0);
                          const double da = std::max(std::abs(along) - c.half_length, 0.0);
                          return std::hypot(dr, da);
                        },
                    },
                    shape);
}

bool contains(const PrimitiveShape& shape, const Vec3& x) { return distance_to_shape(shape, x) == 0.0; }

WorkspaceBounds bounding_box(const PrimitiveShape& shape) {
  return std::visit(overloaded{
                        [](const Cuboid& c) { return WorkspaceBounds{c.center - c.half_extents, c.center + c.half_extents}; },
                        [](const SpherePrimitive& s) {
                          return WorkspaceBounds{s.center.array() - s.radius, s.center.array() + s.radius};
                        },
                        [](const Cylinder& c) {
                          const Eigen::Array3d a = c.axis_unit.array().abs();
                          const Eigen::Array3d ext =
                              a * c.half_length + c.radius * (1.0 - a.square()).cwiseMax(0.0).sqrt();
                          return WorkspaceBounds{c.center.array() - ext, c.center.array() + ext};
                        },
                    },
                    shape);
}

void DepthImage::validate() const {
  if (width <= 0 || height <= 0) throw InvalidArgument("depth image: width/height must be positive");
  if (depths.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw InvalidArgument("depth image: depth buffer size must equal width*height");
  if (!(fx > 0.0) || !(fy > 0.0)) throw InvalidArgument("depth image: fx, fy must be > 0");
}

}  // namespace cfplan
