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

// Gaussian-process surrogate with a Matern-5/2 kernel.
//
// Inputs are mapped to the unit box of the search bounds and outputs are
// standardized before fitting. Hyperparameters (signal variance, isotropic
// length scale, noise variance) maximize the log marginal likelihood over a
// fixed log grid, refined by coordinate search from the best few grid points.

#pragma once

#include "cfplan/geometry.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <utility>
#include <vector>

namespace cfplan {

struct BoundsBox {
  Eigen::VectorXd low;
  Eigen::VectorXd high;

  BoundsBox() = default;
  BoundsBox(Eigen::VectorXd lo, Eigen::VectorXd hi);

  Eigen::Index dimension() const { return low.size(); }
  Eigen::VectorXd width() const { return high - low; }
  bool contains(const Eigen::VectorXd& x) const;
  Eigen::VectorXd clip(const Eigen::VectorXd& x) const;
  Eigen::VectorXd to_unit(const Eigen::VectorXd& x) const;
  Eigen::VectorXd from_unit(const Eigen::VectorXd& u) const;
};

struct Observation {
  Eigen::VectorXd x;
  double y = 0.0;
};

using ObservationSet = std::vector<Observation>;

struct GpHyperparameters {
  double signal_variance = 1.0;  // standardized output units
  double length_scale = 1.0;     // unit-box input units
  double noise_variance = 1e-6;  // standardized output units, jitter included
};

inline constexpr double kMinNoiseVariance = 1e-10;
inline constexpr double kMaxJitter = 1e-4;
/// Hyperparameter search keeps noise_variance >= 1e-8 * signal_variance so the
/// kernel matrix stays well conditioned.
inline constexpr double kMinNoiseRatioLog10 = -8.0;

/// Matern-5/2 covariance at distance `r`.
double matern52(double r, double signal_variance, double length_scale);

struct GpModel {
  BoundsBox bounds;
  GpHyperparameters hyper;
  Eigen::MatrixXd inputs;  // n x d, unit box
  Eigen::VectorXd targets;  // standardized
  double y_mean = 0.0;
  double y_scale = 1.0;
  /// All targets equal: the posterior is the constant mean with prior variance.
  bool constant = false;
  Eigen::LLT<Eigen::MatrixXd> factor;
  Eigen::VectorXd alpha;  // (K + noise I)^-1 targets
  double log_marginal_likelihood = 0.0;

  Eigen::Index size() const { return inputs.rows(); }
  /// Index of the lowest observed target.
  Eigen::Index incumbent() const;
};

struct GpPrediction {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Log marginal likelihood of standardized `targets` at `inputs` (unit box); -inf if factorization fails.
double gp_log_marginal_likelihood(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                  const GpHyperparameters& hyper);

/// Fits with hyperparameter search. Requires at least two observations.
GpModel gp_fit(const ObservationSet& data, const BoundsBox& bounds);

/// Fits with fixed hyperparameters (noise floored and jitter-escalated as needed).
GpModel gp_fit(const ObservationSet& data, const BoundsBox& bounds, const GpHyperparameters& hyper);

/// Posterior of the latent function, in raw output units.
GpPrediction gp_predict(const GpModel& model, const Eigen::VectorXd& x);

/// Posterior in standardized units for inputs already in the unit box (rows of `unit_inputs`).
void gp_predict_standardized(const GpModel& model, const Eigen::MatrixXd& unit_inputs, Eigen::VectorXd& mean,
                             Eigen::VectorXd& stddev);

}  // namespace cfplan
