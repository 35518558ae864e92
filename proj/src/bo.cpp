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

#include "cfplan/bo.hpp"

#include "cfplan/heuristics.hpp"

#include <cmath>
#include <numbers>

namespace cfplan {

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double evaluate(const Objective& f, const Eigen::VectorXd& x, double noise, std::mt19937_64& rng) {
  double y = kFailedEvaluation;
  try {
    y = f(x);
  } catch (const std::exception&) {
    y = kFailedEvaluation;
  }
  if (!std::isfinite(y)) y = kFailedEvaluation;
  if (noise > 0.0) y += std::normal_distribution<double>(0.0, noise)(rng);
  return y;
}

}  // namespace

LowDiscrepancySequence::LowDiscrepancySequence(Eigen::Index dimension, std::uint64_t seed)
    : alpha_(dimension), shift_(dimension) {
  if (dimension < 1) throw InvalidArgument("sequence dimension must be >= 1");
  // phi solves x^(d+1) = x + 1.
  double phi = 2.0;
  for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(dimension + 1));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Eigen::Index j = 0; j < dimension; ++j) {
    alpha_[j] = std::fmod(std::pow(1.0 / phi, static_cast<double>(j + 1)), 1.0);
    shift_[j] = u(rng);
  }
}

Eigen::VectorXd LowDiscrepancySequence::next() {
  Eigen::VectorXd x = shift_ + static_cast<double>(index_++) * alpha_;
  return x.unaryExpr([](double v) { return v - std::floor(v); });
}

Eigen::MatrixXd LowDiscrepancySequence::take(Eigen::Index count) {
  Eigen::MatrixXd out(count, alpha_.size());
  for (Eigen::Index i = 0; i < count; ++i) out.row(i) = next().transpose();
  return out;
}

BoundsBox TrustRegion::region(const BoundsBox& bounds, const Eigen::VectorXd& center) const {
  if (scale >= 1.0) return bounds;
  const Eigen::VectorXd half = 0.5 * scale * bounds.width();
  Eigen::VectorXd lo = (center - half).cwiseMax(bounds.low);
  Eigen::VectorXd hi = (center + half).cwiseMin(bounds.high);
  // Keep a non-degenerate box when the incumbent sits on the boundary.
  for (Eigen::Index j = 0; j < lo.size(); ++j) {
    if (!(lo[j] < hi[j])) {
      lo[j] = bounds.low[j];
      hi[j] = bounds.high[j];
    }
  }
  return BoundsBox(lo, hi);
}

void TrustRegion::record(bool improved) {
  if (improved) {
    scale = 1.0;
    stalls = 0;
    return;
  }
  if (++stalls >= stall_limit) {
    scale = std::max(scale * 0.5, min_scale);
    stalls = 0;
  }
}

AcquisitionScores score_candidates(const GpModel& model, const Eigen::MatrixXd& candidates, double kappa) {
  const Eigen::Index q = candidates.rows();
  Eigen::MatrixXd unit(q, candidates.cols());
  for (Eigen::Index i = 0; i < q; ++i) unit.row(i) = model.bounds.to_unit(candidates.row(i).transpose()).transpose();
  Eigen::VectorXd mean, stddev;
  gp_predict_standardized(model, unit, mean, stddev);

  const double best = model.targets.minCoeff();
  AcquisitionScores s{Eigen::VectorXd(q), Eigen::VectorXd(q), Eigen::VectorXd(q)};
  for (Eigen::Index i = 0; i < q; ++i) {
    const double improvement = best - mean[i];
    if (stddev[i] > 1e-12) {
      const double z = improvement / stddev[i];
      s.ei[i] = improvement * normal_cdf(z) + stddev[i] * normal_pdf(z);
      s.pi[i] = normal_cdf(z);
    } else {
      s.ei[i] = std::max(improvement, 0.0);
      s.pi[i] = improvement > 0.0 ? 1.0 : 0.0;
    }
    s.neg_lcb[i] = -(mean[i] - kappa * stddev[i]);
  }
  return s;
}

std::vector<Eigen::Index> pareto_front(const Eigen::MatrixXd& objectives) {
  std::vector<Eigen::Index> front;
  const Eigen::Index n = objectives.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    bool dominated = false;
    for (Eigen::Index j = 0; j < n && !dominated; ++j) {
      if (j == i) continue;
      const auto a = objectives.row(j).array();
      const auto b = objectives.row(i).array();
      dominated = (a >= b).all() && (a > b).any();
    }
    if (!dominated) front.push_back(i);
  }
  return front;
}

Eigen::MatrixXd candidate_pool(const GpModel& model, const BoundsBox& bounds, const TrustRegion& tr,
                               const AcquisitionConfig& cfg, std::mt19937_64& rng) {
  const Eigen::Index d = bounds.dimension();
  const Eigen::VectorXd incumbent = bounds.from_unit(model.inputs.row(model.incumbent()).transpose());
  const BoundsBox region = tr.region(bounds, incumbent);

  LowDiscrepancySequence seq(d, rng());
  Eigen::MatrixXd pool(cfg.n_quasi_random + cfg.n_perturbations, d);
  for (int i = 0; i < cfg.n_quasi_random; ++i) pool.row(i) = region.from_unit(seq.next()).transpose();

  std::normal_distribution<double> n(0.0, 1.0);
  const Eigen::VectorXd sigma = cfg.perturbation_fraction * bounds.width();
  for (int i = 0; i < cfg.n_perturbations; ++i) {
    Eigen::VectorXd x = incumbent;
    for (Eigen::Index j = 0; j < d; ++j) x[j] += sigma[j] * n(rng);
    pool.row(cfg.n_quasi_random + i) = bounds.clip(x).transpose();
  }
  return pool;
}

Eigen::VectorXd acquire(const GpModel& model, const BoundsBox& bounds, std::mt19937_64& rng, const TrustRegion& tr,
                        const AcquisitionConfig& cfg) {
  const Eigen::MatrixXd pool = candidate_pool(model, bounds, tr, cfg, rng);
  const AcquisitionScores s = score_candidates(model, pool, cfg.kappa);
  Eigen::MatrixXd objectives(pool.rows(), 3);
  objectives << s.ei, s.pi, s.neg_lcb;
  const auto front = pareto_front(objectives);
  std::uniform_int_distribution<std::size_t> pick(0, front.size() - 1);
  return pool.row(front[pick(rng)]).transpose();
}

BoResult bo_minimize(const Objective& objective, const BoundsBox& bounds, const BoConfig& cfg) {
  if (cfg.n_init < 2) throw InvalidArgument("bo_minimize: n_init must be >= 2");
  if (cfg.n_iter < 0) throw InvalidArgument("bo_minimize: n_iter must be >= 0");
  std::mt19937_64 rng(cfg.seed);

  BoResult result;
  result.best_y = std::numeric_limits<double>::infinity();
  auto record = [&](const Eigen::VectorXd& x) {
    const double y = evaluate(objective, x, cfg.observation_noise, rng);
    result.observations.push_back({x, y});
    const bool improved = y < result.best_y;
    if (improved) {
      result.best_y = y;
      result.best_x = x;
    }
    return improved;
  };

  LowDiscrepancySequence init(bounds.dimension(), mix_seed(cfg.seed, 0x1d));
  for (int i = 0; i < cfg.n_init; ++i) record(bounds.from_unit(init.next()));

  TrustRegion tr;
  for (int it = 0; it < cfg.n_iter; ++it) {
    const GpModel model = gp_fit(result.observations, bounds);
    const Eigen::VectorXd x = bounds.clip(acquire(model, bounds, rng, tr, cfg.acquisition));
    tr.record(record(x));
  }
  return result;
}

BoResult bo_minimize(const Objective& objective, const BoundsBox& bounds, int n_init, int n_iter,
                     std::uint64_t seed) {
  BoConfig cfg;
  cfg.n_init = n_init;
  cfg.n_iter = n_iter;
  cfg.seed = seed;
  return bo_minimize(objective, bounds, cfg);
}

}  // namespace cfplan
