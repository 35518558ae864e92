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

// Force-field components of the circular-field planner.
//
// Every component is a free function of the agent kinematics and is templated
// on the scalar type. Gains enter exactly once: the component functions take
// their own gain so they can be used standalone, and steering_force calls them
// with unit gain before applying each gain in the final sum.

#pragma once

#include "cfplan/geometry.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <span>
#include <stdexcept>

namespace cfplan {

class OverlapError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Scalar = double>
struct AgentKinematics {
  Vector3<Scalar> position = Vector3<Scalar>::Zero();
  Vector3<Scalar> velocity = Vector3<Scalar>::Zero();
};

template <typename Scalar = double>
struct GainSet {
  Scalar k_p = Scalar(0);
  Scalar k_v = Scalar(0);
  Scalar k_cf = Scalar(0);
  Scalar k_manip = Scalar(0);
  Scalar k_r = Scalar(0);
  Scalar nu = Scalar(1);      // velocity scale of the attractor
  Scalar lambda = Scalar(1);  // manipulability force magnitude

  void validate() const {
    if (k_p < 0 || k_v < 0 || k_cf < 0 || k_manip < 0 || k_r < 0)
      throw InvalidArgument("gains must be non-negative");
  }
};

template <typename Scalar = double>
using JacobianMatrix = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

/// What repulsive_force does when the agent is inside an obstacle.
enum class OverlapPolicy {
  kThrow,
  /// Clamp the surface distance to kMinClearance and keep pushing outward.
  kClamp,
};

inline constexpr double kMinClearance = 1e-4;

/// Velocity-limited attractor: -k_v (xdot - nu * xdot_d), xdot_d = (k_p / k_v)(goal - x).
///
/// Evaluated in the expanded form -k_v xdot + nu k_p (goal - x), which agrees
/// with the quotient form for k_v > 0 and stays defined at k_v = 0.
template <typename Scalar>
Vector3<Scalar> attractive_force(const AgentKinematics<Scalar>& kin, const Vector3<Scalar>& goal,
                                 const GainSet<Scalar>& gains) {
  return -gains.k_v * kin.velocity + gains.nu * gains.k_p * (goal - kin.position);
}

/// Lorentz-style circular-field force xdot x (k_cf c x xdot), zero outside the detection shell.
template <typename Scalar>
Vector3<Scalar> cf_force(const AgentKinematics<Scalar>& kin, const SphereObstacle<Scalar>& obs,
                         const Vector3<Scalar>& current, Scalar k_cf, Scalar r_d) {
  using std::abs;
  if (abs(current.norm() - Scalar(1)) > Scalar(1e-9)) throw InvalidArgument("cf_force: current must be unit");
  if (!(r_d > Scalar(0))) throw InvalidArgument("cf_force: r_d must be > 0");
  if (obs.surface_distance(kin.position) > r_d) return Vector3<Scalar>::Zero();
  const Vector3<Scalar> field = k_cf * current.cross(kin.velocity);
  return kin.velocity.cross(field);
}

/// Classical APF repulsion k_r (1/rho - 1/r_d) / rho^2 along the outward surface normal.
template <typename Scalar>
Vector3<Scalar> repulsive_force(const AgentKinematics<Scalar>& kin, const SphereObstacle<Scalar>& obs,
                                Scalar k_r, Scalar r_d, OverlapPolicy policy = OverlapPolicy::kThrow) {
  if (!(r_d > Scalar(0))) throw InvalidArgument("repulsive_force: r_d must be > 0");
  const Vector3<Scalar> offset = kin.position - obs.center;
  const Scalar center_distance = offset.norm();
  Scalar rho = center_distance - obs.radius;
  if (rho > r_d) return Vector3<Scalar>::Zero();
  if (rho <= Scalar(0)) {
    if (policy == OverlapPolicy::kThrow) throw OverlapError("repulsive_force: position inside obstacle");
    rho = Scalar(kMinClearance);
  }
  const Vector3<Scalar> outward =
      center_distance > Scalar(0) ? Vector3<Scalar>(offset / center_distance) : Vector3<Scalar>::UnitZ();
  return k_r * (Scalar(1) / rho - Scalar(1) / r_d) / (rho * rho) * outward;
}

/// Left singular vector of the smallest singular value of `jacobian`.
///
/// Singular values within 1e-9 of the minimum count as tied; the tied value with
/// the lowest index in descending order wins. The sign makes the first component
/// larger than 1e-12 in magnitude positive. Rows beyond the rank of a wide-short
/// matrix carry singular value zero.
template <typename Scalar>
Vector3<Scalar> min_singular_direction(const JacobianMatrix<Scalar>& jacobian) {
  if (jacobian.cols() < 1) throw InvalidArgument("jacobian must have at least one column");
  if (!jacobian.allFinite()) throw InvalidArgument("jacobian must be finite");
  Eigen::JacobiSVD<JacobianMatrix<Scalar>> svd(jacobian, Eigen::ComputeFullU);
  Eigen::Matrix<Scalar, 3, 1> sigma = Eigen::Matrix<Scalar, 3, 1>::Zero();
  sigma.head(svd.singularValues().size()) = svd.singularValues();
  const Scalar smallest = sigma.minCoeff();
  int pick = 2;
  for (int i = 0; i < 3; ++i) {
    if (sigma[i] - smallest <= Scalar(1e-9)) {
      pick = i;
      break;
    }
  }
  Vector3<Scalar> w = svd.matrixU().col(pick);
  for (int i = 0; i < 3; ++i) {
    using std::abs;
    if (abs(w[i]) > Scalar(1e-12)) {
      if (w[i] < Scalar(0)) w = -w;
      break;
    }
  }
  return w;
}

template <typename Scalar>
Vector3<Scalar> manipulability_force(const JacobianMatrix<Scalar>& jacobian, const GainSet<Scalar>& gains) {
  if (gains.k_manip == Scalar(0)) return Vector3<Scalar>::Zero();
  return gains.k_manip * gains.lambda * min_singular_direction(jacobian);
}

/// An obstacle together with the artificial current assigned to it.
template <typename Scalar = double>
struct ActiveObstacle {
  SphereObstacle<Scalar> obstacle;
  Vector3<Scalar> current = Vector3<Scalar>::UnitZ();
};

/// Steering force with a precomputed unit-gain manipulability term (lambda * w_min).
template <typename Scalar>
Vector3<Scalar> steering_force(const AgentKinematics<Scalar>& kin, const Vector3<Scalar>& goal,
                               std::span<const ActiveObstacle<Scalar>> obstacles,
                               const Vector3<Scalar>& manip_unit_force, const GainSet<Scalar>& gains, Scalar r_d,
                               OverlapPolicy policy = OverlapPolicy::kThrow) {
  Vector3<Scalar> circular = Vector3<Scalar>::Zero();
  Vector3<Scalar> repulsive = Vector3<Scalar>::Zero();
  for (const auto& a : obstacles) {
    circular += cf_force(kin, a.obstacle, a.current, Scalar(1), r_d);
    repulsive += repulsive_force(kin, a.obstacle, Scalar(1), r_d, policy);
  }
  return attractive_force(kin, goal, gains) + gains.k_cf * circular + gains.k_manip * manip_unit_force +
         gains.k_r * repulsive;
}

/// Steering force; `jacobian` may be null, in which case the manipulability term vanishes.
template <typename Scalar>
Vector3<Scalar> steering_force(const AgentKinematics<Scalar>& kin, const Vector3<Scalar>& goal,
                               std::span<const ActiveObstacle<Scalar>> obstacles,
                               const JacobianMatrix<Scalar>* jacobian, const GainSet<Scalar>& gains, Scalar r_d,
                               OverlapPolicy policy = OverlapPolicy::kThrow) {
  Vector3<Scalar> manip = Vector3<Scalar>::Zero();
  if (jacobian != nullptr && gains.k_manip != Scalar(0)) manip = gains.lambda * min_singular_direction(*jacobian);
  return steering_force(kin, goal, obstacles, manip, gains, r_d, policy);
}

}  // namespace cfplan
