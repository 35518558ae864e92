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

#include "doctest.h"
#include "oracles.hpp"

#include "cfplan/gp.hpp"

#include <random>

using namespace cfplan;

namespace {

struct Fixture {
  BoundsBox bounds;
  ObservationSet data;
};

Fixture make_fixture(std::uint64_t seed, int n, int d) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Fixture f;
  f.bounds = BoundsBox(Eigen::VectorXd::Constant(d, -2.0), Eigen::VectorXd::Constant(d, 3.0));
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(d);
    for (int k = 0; k < d; ++k) x[k] = -2.0 + 5.0 * u(rng);
    f.data.push_back({x, std::sin(x.sum()) + 0.3 * x.squaredNorm()});
  }
  return f;
}

// Standardized oracle prediction, mapped back to raw units.
oracle::Posterior oracle_predict(const Fixture& f, const GpHyperparameters& h, const Eigen::VectorXd& x) {
  const auto n = static_cast<Eigen::Index>(f.data.size());
  const Eigen::Index d = f.bounds.dimension();
  Eigen::MatrixXd X(n, d);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < d; ++k)
      X(i, k) = (f.data[static_cast<std::size_t>(i)].x[k] - f.bounds.low[k]) / (f.bounds.high[k] - f.bounds.low[k]);
    y[i] = f.data[static_cast<std::size_t>(i)].y;
  }
  const double mean = y.mean();
  const double scale = std::sqrt((y.array() - mean).square().mean());
  Eigen::VectorXd xu(d);
  for (Eigen::Index k = 0; k < d; ++k) xu[k] = (x[k] - f.bounds.low[k]) / (f.bounds.high[k] - f.bounds.low[k]);
  const auto p = oracle::gp_posterior(X, (y.array() - mean) / scale, xu, h.signal_variance, h.length_scale,
                                      h.noise_variance);
  return {mean + scale * p.mean, scale * p.stddev};
}

}  // namespace

TEST_CASE("matern52 closed form") {
  CHECK(matern52(0.0, 2.0, 0.5) == 2.0);
  const double r = 0.3, ls = 0.7, a = std::sqrt(5.0) * r / ls;
  CHECK(matern52(r, 1.5, ls) == doctest::Approx(1.5 * (1 + a + a * a / 3) * std::exp(-a)).epsilon(1e-15));
  CHECK(matern52(0.2, 1.0, 0.5) > matern52(0.4, 1.0, 0.5));
}

TEST_CASE("posterior matches a dense direct solve") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const int d = static_cast<int>(1 + seed % 3);
    const Fixture f = make_fixture(seed, 20, d);
    const GpModel model = gp_fit(f.data, f.bounds);
    CHECK(model.size() == 20);
    CHECK(std::isfinite(model.log_marginal_likelihood));
    std::mt19937_64 rng(seed + 100);
    std::uniform_real_distribution<double> u(-2.0, 3.0);
    for (int q = 0; q < 25; ++q) {
      Eigen::VectorXd x(d);
      for (int k = 0; k < d; ++k) x[k] = u(rng);
      const auto got = gp_predict(model, x);
      const auto want = oracle_predict(f, model.hyper, x);
      CHECK(std::abs(got.mean - want.mean) <= 1e-8);
      CHECK(std::abs(got.stddev - want.stddev) <= 1e-8);
    }
  }
}

TEST_CASE("fixed hyperparameters") {
  const Fixture f = make_fixture(9, 12, 2);
  const GpHyperparameters h{1.3, 0.4, 1e-4};
  const GpModel model = gp_fit(f.data, f.bounds, h);
  CHECK(model.hyper.signal_variance == h.signal_variance);
  CHECK(model.hyper.length_scale == h.length_scale);
  const Eigen::VectorXd x = Eigen::Vector2d(0.5, 1.5);
  const auto got = gp_predict(model, x);
  const auto want = oracle_predict(f, h, x);
  CHECK(got.mean == doctest::Approx(want.mean).epsilon(1e-10));
  CHECK(got.stddev == doctest::Approx(want.stddev).epsilon(1e-10));
}

TEST_CASE("posterior properties") {
  const Fixture f = make_fixture(4, 15, 1);
  const GpModel model = gp_fit(f.data, f.bounds, GpHyperparameters{1.0, 0.2, 1e-8});

  // Near interpolation with tiny noise, and uncertainty shrinking toward data.
  for (const auto& o : f.data) {
    const auto p = gp_predict(model, o.x);
    CHECK(p.mean == doctest::Approx(o.y).epsilon(1e-4));
    CHECK(p.stddev < 1e-2 * model.y_scale);
  }
  CHECK(model.incumbent() >= 0);
  for (const auto& o : f.data) CHECK(f.data[static_cast<std::size_t>(model.incumbent())].y <= o.y);

  // Far from every input (a wide box), the stddev approaches the prior.
  ObservationSet close{{Eigen::VectorXd::Constant(1, 0.0), 1.0}, {Eigen::VectorXd::Constant(1, 0.01), 2.0}};
  const BoundsBox wide(Eigen::VectorXd::Constant(1, 0.0), Eigen::VectorXd::Constant(1, 100.0));
  const GpModel far = gp_fit(close, wide, GpHyperparameters{1.0, 0.05, 1e-6});
  const auto p = gp_predict(far, Eigen::VectorXd::Constant(1, 90.0));
  CHECK(p.stddev == doctest::Approx(far.y_scale).epsilon(1e-9));
  CHECK(p.mean == doctest::Approx(far.y_mean).epsilon(1e-9));
}

TEST_CASE("constant targets") {
  ObservationSet data{{Eigen::VectorXd::Constant(2, 0.1), 4.0},
                      {Eigen::VectorXd::Constant(2, 0.5), 4.0},
                      {Eigen::VectorXd::Constant(2, 0.9), 4.0}};
  const BoundsBox box(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2));
  const GpModel m = gp_fit(data, box);
  CHECK(m.constant);
  const auto p = gp_predict(m, Eigen::VectorXd::Constant(2, 0.3));
  CHECK(p.mean == 4.0);
  CHECK(std::isfinite(p.stddev));
  CHECK_THROWS_AS(gp_fit(ObservationSet{data.front()}, box), InvalidArgument);
  CHECK_THROWS_AS(gp_predict(m, Eigen::VectorXd::Zero(3)), InvalidArgument);
}

TEST_CASE("BoundsBox maps to and from the unit box") {
  const BoundsBox b(Eigen::Vector2d(-1, 2), Eigen::Vector2d(3, 4));
  const Eigen::VectorXd x = Eigen::Vector2d(0, 3.5);
  CHECK((b.from_unit(b.to_unit(x)) - x).norm() < 1e-15);
  CHECK(b.contains(x));
  CHECK(!b.contains(Eigen::Vector2d(5, 3)));
  CHECK(b.clip(Eigen::Vector2d(5, 0)) == Eigen::VectorXd(Eigen::Vector2d(3, 2)));
  CHECK_THROWS_AS(BoundsBox(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0)), InvalidArgument);
}
