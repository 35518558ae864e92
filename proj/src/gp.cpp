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

#include "cfplan/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace cfplan {

namespace {

constexpr double kSqrt5 = 2.23606797749978969640917366873128;

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd d(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j) d(i, j) = (a.row(i) - b.row(j)).norm();
  return d;
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& distances, double signal_variance, double length_scale) {
  return distances.unaryExpr([&](double r) { return matern52(r, signal_variance, length_scale); });
}

/// Factorizes K + noise I, escalating jitter up to kMaxJitter. Returns the noise actually used.
std::optional<double> factorize(const Eigen::MatrixXd& k, double noise, Eigen::LLT<Eigen::MatrixXd>& llt) {
  double used = std::max(noise, kMinNoiseVariance);
  for (;;) {
    Eigen::MatrixXd a = k;
    a.diagonal().array() += used;
    llt.compute(a);
    if (llt.info() == Eigen::Success && llt.matrixLLT().diagonal().minCoeff() > 0.0) return used;
    if (used >= kMaxJitter) return std::nullopt;
    used = std::min(used * 10.0, kMaxJitter);
  }
}

double lml_from(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::VectorXd& targets, Eigen::VectorXd& alpha) {
  alpha = llt.solve(targets);
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  const auto n = static_cast<double>(targets.size());
  return -0.5 * targets.dot(alpha) - 0.5 * log_det - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

struct Prepared {
  Eigen::MatrixXd inputs;
  Eigen::VectorXd raw;
};

Prepared prepare(const ObservationSet& data, const BoundsBox& bounds) {
  Prepared p;
  const auto n = static_cast<Eigen::Index>(data.size());
  p.inputs.resize(n, bounds.dimension());
  p.raw.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& o = data[static_cast<std::size_t>(i)];
    if (o.x.size() != bounds.dimension()) throw InvalidArgument("gp_fit: observation dimension mismatch");
    if (!std::isfinite(o.y)) throw InvalidArgument("gp_fit: observations must be finite");
    p.inputs.row(i) = bounds.to_unit(o.x).transpose();
    p.raw[i] = o.y;
  }
  return p;
}

GpModel finish(GpModel m, const Eigen::MatrixXd& distances) {
  const Eigen::MatrixXd k = kernel_matrix(distances, m.hyper.signal_variance, m.hyper.length_scale);
  const auto used = factorize(k, m.hyper.noise_variance, m.factor);
  if (!used) throw std::runtime_error("gp_fit: covariance factorization failed at maximum jitter");
  m.hyper.noise_variance = *used;
  m.log_marginal_likelihood = lml_from(m.factor, m.targets, m.alpha);
  return m;
}

}  // namespace

BoundsBox::BoundsBox(Eigen::VectorXd lo, Eigen::VectorXd hi) : low(std::move(lo)), high(std::move(hi)) {
  if (low.size() != high.size() || low.size() == 0) throw InvalidArgument("bounds: size mismatch");
  if (!(low.array() < high.array()).all()) throw InvalidArgument("bounds: low must be < high");
}

bool BoundsBox::contains(const Eigen::VectorXd& x) const {
  return x.size() == low.size() && (x.array() >= low.array()).all() && (x.array() <= high.array()).all();
}

Eigen::VectorXd BoundsBox::clip(const Eigen::VectorXd& x) const { return x.cwiseMax(low).cwiseMin(high); }

Eigen::VectorXd BoundsBox::to_unit(const Eigen::VectorXd& x) const {
  return ((x - low).array() / (high - low).array()).matrix();
}

Eigen::VectorXd BoundsBox::from_unit(const Eigen::VectorXd& u) const {
  return low + (u.array() * (high - low).array()).matrix();
}

double matern52(double r, double signal_variance, double length_scale) {
  const double s = kSqrt5 * r / length_scale;
  return signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

Eigen::Index GpModel::incumbent() const {
  Eigen::Index best = 0;
  targets.minCoeff(&best);
  return best;
}

double gp_log_marginal_likelihood(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                  const GpHyperparameters& hyper) {
  Eigen::LLT<Eigen::MatrixXd> llt;
  const auto d = pairwise_distances(inputs, inputs);
  if (!factorize(kernel_matrix(d, hyper.signal_variance, hyper.length_scale), hyper.noise_variance, llt))
    return -std::numeric_limits<double>::infinity();
  Eigen::VectorXd alpha;
  return lml_from(llt, targets, alpha);
}

GpModel gp_fit(const ObservationSet& data, const BoundsBox& bounds, const GpHyperparameters& hyper) {
  if (data.size() < 2) throw InvalidArgument("gp_fit: need at least two observations");
  const Prepared p = prepare(data, bounds);
  GpModel m;
  m.bounds = bounds;
  m.inputs = p.inputs;
  m.y_mean = p.raw.mean();
  const double var = (p.raw.array() - m.y_mean).square().mean();
  m.y_scale = std::sqrt(var);
  if (!(m.y_scale > 1e-12 * std::max(1.0, std::abs(m.y_mean)))) {
    m.constant = true;
    m.y_scale = 1.0;
  }
  m.targets = (p.raw.array() - m.y_mean) / m.y_scale;
  m.hyper = hyper;
  if (m.constant) {
    m.targets.setZero();
    m.alpha = Eigen::VectorXd::Zero(m.targets.size());
    return m;
  }
  const Eigen::MatrixXd distances = pairwise_distances(m.inputs, m.inputs);
  return finish(std::move(m), distances);
}

GpModel gp_fit(const ObservationSet& data, const BoundsBox& bounds) {
  if (data.size() < 2) throw InvalidArgument("gp_fit: need at least two observations");
  GpModel m = gp_fit(data, bounds, GpHyperparameters{});
  if (m.constant) return m;

  const Eigen::MatrixXd distances = pairwise_distances(m.inputs, m.inputs);
  const double root_d = std::sqrt(static_cast<double>(bounds.dimension()));

  struct Candidate {
    double log_ls, log_sv, log_noise, lml;
  };
  auto evaluate = [&](double log_ls, double log_sv, double log_noise) {
    Eigen::LLT<Eigen::MatrixXd> llt;
    log_noise = std::max(log_noise, log_sv + kMinNoiseRatioLog10);
    const double noise = std::pow(10.0, log_noise);
    const auto k = kernel_matrix(distances, std::pow(10.0, log_sv), std::pow(10.0, log_ls));
    if (!factorize(k, noise, llt)) return Candidate{log_ls, log_sv, log_noise, -std::numeric_limits<double>::infinity()};
    Eigen::VectorXd alpha;
    return Candidate{log_ls, log_sv, log_noise, lml_from(llt, m.targets, alpha)};
  };

  // Length scale spans three decades around the unit-box diagonal.
  const double ls_center = std::log10(root_d);
  std::vector<Candidate> grid;
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 6; ++j)
      for (int k = 0; k <= 4; ++k)
        grid.push_back(evaluate(ls_center - 2.0 + 0.25 * i, -1.0 + 0.5 * j, -10.0 + 2.0 * k));
  std::sort(grid.begin(), grid.end(), [](const Candidate& a, const Candidate& b) { return a.lml > b.lml; });

  Candidate best = grid.front();
  for (std::size_t start = 0; start < std::min<std::size_t>(3, grid.size()); ++start) {
    Candidate c = grid[start];
    if (!std::isfinite(c.lml)) continue;
    for (double step = 0.125; step > 0.01; step *= 0.5) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (int axis = 0; axis < 3; ++axis) {
          for (double sign : {-1.0, 1.0}) {
            Candidate t = c;
            double& v = axis == 0 ? t.log_ls : axis == 1 ? t.log_sv : t.log_noise;
            const double scale = axis == 2 ? 8.0 : 1.0;
            v += sign * step * scale;
            if (axis == 2) v = std::clamp(v, -10.0, 0.0);
            const Candidate e = evaluate(t.log_ls, t.log_sv, t.log_noise);
            if (e.lml > c.lml + 1e-9) {
              c = e;
              moved = true;
            }
          }
        }
      }
    }
    if (c.lml > best.lml) best = c;
  }

  m.hyper = {std::pow(10.0, best.log_sv), std::pow(10.0, best.log_ls), std::pow(10.0, best.log_noise)};
  return finish(std::move(m), distances);
}

void gp_predict_standardized(const GpModel& model, const Eigen::MatrixXd& unit_inputs, Eigen::VectorXd& mean,
                             Eigen::VectorXd& stddev) {
  const Eigen::Index q = unit_inputs.rows();
  if (model.constant) {
    mean = Eigen::VectorXd::Zero(q);
    stddev = Eigen::VectorXd::Constant(q, std::sqrt(model.hyper.signal_variance));
    return;
  }
  const Eigen::MatrixXd k_star =
      kernel_matrix(pairwise_distances(model.inputs, unit_inputs), model.hyper.signal_variance,
                    model.hyper.length_scale);  // n x q
  mean = k_star.transpose() * model.alpha;
  const Eigen::MatrixXd v = model.factor.matrixL().solve(k_star);
  const Eigen::VectorXd var = (model.hyper.signal_variance - v.colwise().squaredNorm().array()).cwiseMax(0.0);
  stddev = var.cwiseSqrt();
}

GpPrediction gp_predict(const GpModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.bounds.dimension()) throw InvalidArgument("gp_predict: dimension mismatch");
  Eigen::VectorXd mean, stddev;
  gp_predict_standardized(model, model.bounds.to_unit(x).transpose(), mean, stddev);
  return {model.y_mean + model.y_scale * mean[0], model.y_scale * stddev[0]};
}

}  // namespace cfplan
