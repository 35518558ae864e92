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

// Bayesian minimization with a GP surrogate.
//
// Each round fits the surrogate, scores a candidate pool with three
// acquisition functions (expected improvement, probability of improvement and
// a lower confidence bound), and evaluates a random member of their Pareto
// front. Candidates come from a trust region around the incumbent that halves
// after a run of non-improving rounds and resets on improvement.

#pragma once

#include "cfplan/gp.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace cfplan {

/// Value recorded for objective evaluations that throw or return non-finite values.
inline constexpr double kFailedEvaluation = 1e9;

/// Randomly shifted additive-recurrence (golden-ratio generalization) sequence in [0,1)^d.
class LowDiscrepancySequence {
 public:
  LowDiscrepancySequence(Eigen::Index dimension, std::uint64_t seed);

  Eigen::VectorXd next();
  Eigen::MatrixXd take(Eigen::Index count);  // count x d

 private:
  Eigen::VectorXd alpha_;
  Eigen::VectorXd shift_;
  std::uint64_t index_ = 1;
};

struct TrustRegion {
  double scale = 1.0;  // fraction of the full box width
  int stalls = 0;      // consecutive non-improving rounds
  int stall_limit = 5;
  double min_scale = 1.0 / 64.0;

  /// Sub-box of `bounds` centered at `center`, clipped to the bounds.
  BoundsBox region(const BoundsBox& bounds, const Eigen::VectorXd& center) const;
  void record(bool improved);
};

struct AcquisitionConfig {
  int n_quasi_random = 2048;
  int n_perturbations = 256;
  double perturbation_fraction = 0.1;  // of the box width
  double kappa = 2.0;
};

/// Per-candidate acquisition values; larger is better for every column.
struct AcquisitionScores {
  Eigen::VectorXd ei;
  Eigen::VectorXd pi;
  Eigen::VectorXd neg_lcb;
};

/// Scores `candidates` (rows, raw units) against the model's incumbent.
AcquisitionScores score_candidates(const GpModel& model, const Eigen::MatrixXd& candidates, double kappa = 2.0);

/// Indices of rows of `objectives` not dominated by any other row (maximization).
std::vector<Eigen::Index> pareto_front(const Eigen::MatrixXd& objectives);

/// Candidate pool: quasi-random points in the trust region plus Gaussian
/// perturbations of the incumbent, all clipped to `bounds`.
Eigen::MatrixXd candidate_pool(const GpModel& model, const BoundsBox& bounds, const TrustRegion& tr,
                               const AcquisitionConfig& cfg, std::mt19937_64& rng);

/// Picks a uniformly random member of the acquisition Pareto front.
Eigen::VectorXd acquire(const GpModel& model, const BoundsBox& bounds, std::mt19937_64& rng,
                        const TrustRegion& tr = {}, const AcquisitionConfig& cfg = {});

struct BoConfig {
  int n_init = 6;
  int n_iter = 50;
  std::uint64_t seed = 0;
  /// Standard deviation of Gaussian noise added to each evaluation.
  double observation_noise = 0.0;
  AcquisitionConfig acquisition;
};

struct BoResult {
  Eigen::VectorXd best_x;
  double best_y = 0.0;
  ObservationSet observations;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

BoResult bo_minimize(const Objective& objective, const BoundsBox& bounds, const BoConfig& cfg);
BoResult bo_minimize(const Objective& objective, const BoundsBox& bounds, int n_init, int n_iter,
                     std::uint64_t seed);

}  // namespace cfplan
