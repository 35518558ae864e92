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

// Independent reference implementations used by the unit and acceptance tests.
// They deliberately avoid the library's own helpers: plain loops over
// std::array, closed forms written out by hand, dense direct solves.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using P3 = std::array<double, 3>;

inline double dist(const P3& a, const P3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct Ball {
  P3 c;
  double r;
};

inline double clearance(const std::vector<Ball>& balls, const P3& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : balls) m = std::min(m, dist(x, b.c) - b.r);
  return m;
}

/// Predicted-trajectory cost written straight from its definition.
inline double agent_cost(const std::vector<P3>& xs, const std::vector<Ball>& balls, const P3& goal,
                         const P3& ws_min, const P3& ws_max, double w_pl, double w_gd, double w_od, double w_ws) {
  double pl = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) pl += dist(xs[i], xs[i - 1]);
  const double gd = dist(goal, xs.back());
  const std::size_t first = xs.size() > 1 ? 1 : 0;
  double od = 0.0;
  if (!balls.empty()) {
    double d_min = 1e300;
    for (std::size_t i = first; i < xs.size(); ++i) d_min = std::min(d_min, clearance(balls, xs[i]));
    od = 1.0 / std::max(d_min, 1e-6);
  }
  double ws = 0.0;
  for (std::size_t i = first; i < xs.size(); ++i)
    for (int k = 0; k < 3; ++k) {
      const double lo = ws_min[k] - xs[i][k];
      const double hi = xs[i][k] - ws_max[k];
      if (lo > 0) ws += lo * lo;
      if (hi > 0) ws += hi * hi;
    }
  return w_pl * pl + w_gd * gd + w_od * od + w_ws * ws;
}

/// Trajectory cost over samples x_0..x_T.
inline double j_pmaf(const std::vector<P3>& xs, const std::vector<Ball>& balls, const P3& goal, double w_cl,
                     double w_pl, double w_sm, double w_gd) {
  const std::size_t T = xs.size() - 1;
  double cl = 0.0;
  if (!balls.empty() && T > 0) {
    for (std::size_t t = 1; t <= T; ++t) cl += 1.0 / std::max(clearance(balls, xs[t]), 1e-6);
    cl /= static_cast<double>(T);
  }
  double pl = 0.0;
  for (std::size_t t = 0; t < T; ++t) pl += dist(xs[t + 1], xs[t]);
  double sm = 0.0;
  if (T >= 3) {
    for (std::size_t t = 2; t <= T - 1; ++t) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double a = xs[t + 1][k] - 2.0 * xs[t][k] + xs[t - 1][k];
        s += a * a;
      }
      sm += s;
    }
    sm /= static_cast<double>(T - 1);
  }
  const double gd = dist(xs[T], goal);
  return w_cl * cl + w_pl * pl + w_sm * sm + w_gd * gd;
}

inline double matern52(double r, double sv, double ls) {
  const double a = std::sqrt(5.0) * r / ls;
  return sv * (1.0 + a + a * a / 3.0) * std::exp(-a);
}

struct Posterior {
  double mean;
  double stddev;
};

/// Dense GP posterior with a direct LU solve, in standardized output units.
inline Posterior gp_posterior(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& x,
                              double sv, double ls, double noise) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd K(n, n);
  Eigen::VectorXd k(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) K(i, j) = matern52((X.row(i) - X.row(j)).norm(), sv, ls);
    K(i, i) += noise;
    k[i] = matern52((X.row(i).transpose() - x).norm(), sv, ls);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  const double mean = k.dot(lu.solve(y));
  const double var = sv - k.dot(lu.solve(k));
  return {mean, std::sqrt(std::max(var, 0.0))};
}

/// Expected improvement for minimization.
inline double expected_improvement(double mu, double sigma, double best) {
  if (sigma <= 0.0) return std::max(best - mu, 0.0);
  const double z = (best - mu) / sigma;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
  return (best - mu) * cdf + sigma * pdf;
}

/// Left singular vector of the smallest singular value via the eigenproblem of J J^T.
inline Eigen::Vector3d min_singular_vector(const Eigen::Matrix<double, 3, Eigen::Dynamic>& J) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(J * J.transpose());
  Eigen::Vector3d v = es.eigenvectors().col(0);  // ascending eigenvalues
  for (int i = 0; i < 3; ++i)
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0) v = -v;
      break;
    }
  return v;
}

/// Cells of the circumscribing lattice (edge 2r/sqrt(3)) whose centers lie within r of an axis-aligned box.
inline std::size_t cuboid_cell_count(const P3& c, const P3& h, double r) {
  const double e = 2.0 * r / std::sqrt(3.0);
  std::size_t count = 0;
  std::array<long, 3> lo{}, hi{};
  for (int k = 0; k < 3; ++k) {
    lo[k] = static_cast<long>(std::floor((c[k] - h[k] - r) / e)) - 1;
    hi[k] = static_cast<long>(std::ceil((c[k] + h[k] + r) / e)) + 1;
  }
  for (long i = lo[0]; i <= hi[0]; ++i)
    for (long j = lo[1]; j <= hi[1]; ++j)
      for (long l = lo[2]; l <= hi[2]; ++l) {
        const P3 p{(i + 0.5) * e, (j + 0.5) * e, (l + 0.5) * e};
        double out2 = 0.0, inside = -1e300;
        for (int k = 0; k < 3; ++k) {
          const double q = std::abs(p[k] - c[k]) - h[k];
          out2 += q > 0 ? q * q : 0.0;
          inside = std::max(inside, q);
        }
        const double d = out2 > 0 ? std::sqrt(out2) : std::min(inside, 0.0);
        if (d <= r) ++count;
      }
  return count;
}

inline double branin(double x1, double x2) {
  const double a = 1.0, b = 5.1 / (4.0 * M_PI * M_PI), c = 5.0 / M_PI, r = 6.0, s = 10.0, t = 1.0 / (8.0 * M_PI);
  const double u = x2 - b * x1 * x1 + c * x1 - r;
  return a * u * u + s * (1.0 - t) * std::cos(x1) + s;
}

/// Branin minimum on [-5,10]x[0,15] by dense grid search.
inline double branin_grid_minimum(int n = 1501) {
  double best = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      best = std::min(best, branin(-5.0 + 15.0 * i / (n - 1), 15.0 * j / (n - 1)));
  return best;
}

}  // namespace oracle
