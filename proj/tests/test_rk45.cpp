// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <catch_amalgamated.hpp>
#include "sgph/errors.hpp"
#include "sgph/rk45.hpp"

using namespace sgph;
using Catch::Approx;

namespace
{

const OdeRhs oscillator = [](double, const Eigen::Ref<const Eigen::VectorXd> &x,
                             Eigen::Ref<Eigen::VectorXd> dx) {
  dx(0) = x(1);
  dx(1) = -x(0);
};

}  // namespace

TEST_CASE("exponential decay", "[rk45]")
{
  const OdeRhs f = [](double, const Eigen::Ref<const Eigen::VectorXd> &x,
                      Eigen::Ref<Eigen::VectorXd> dx) { dx = -x; };
  const OdeSolution sol = integrate_rk45(f, Eigen::VectorXd::Ones(1), 0.0, 1.0);
  CHECK(sol.t_end() == 1.0);
  CHECK(std::abs(sol.x.back()(0) - std::exp(-1.0)) <= 10 * 1e-4 * std::exp(-1.0));
  CHECK(sol.stats.rejected == 0);
  CHECK(sol.dense.size() + 1 == sol.size());
}

TEST_CASE("harmonic oscillator at half period", "[rk45]")
{
  const OdeSolution sol =
      integrate_rk45(oscillator, Eigen::Vector2d(1.0, 0.0), 0.0, std::numbers::pi);
  CHECK(std::abs(sol.x.back()(0) + 1.0) <= 1e-3);
  Rk45Options tight;
  tight.rel_tol = 1e-10;
  tight.abs_tol = 1e-12;
  const OdeSolution fine =
      integrate_rk45(oscillator, Eigen::Vector2d(1.0, 0.0), 0.0, std::numbers::pi, tight);
  CHECK(std::abs(fine.x.back()(0) + 1.0) <= 1e-8);
  CHECK(fine.size() > sol.size());
}

TEST_CASE("continuous extension between steps", "[rk45]")
{
  Rk45Options opts;
  opts.rel_tol = 1e-8;
  opts.abs_tol = 1e-10;
  opts.output_times = uniform_grid(0.0, 10.0, 101);
  const OdeSolution sol = integrate_rk45(oscillator, Eigen::Vector2d(1.0, 0.0), 0.0, 10.0, opts);
  REQUIRE(sol.out_x.size() == 101);
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.out_t.size(); i++)
  {
    worst = std::max(worst, std::abs(sol.out_x[i](0) - std::cos(sol.out_t[i])));
  }
  CHECK(worst < 1e-6);
  // Midpoints of accepted steps, where the interpolant is least accurate.
  worst = 0.0;
  for (std::size_t i = 0; i + 1 < sol.size(); i++)
  {
    const double tm = 0.5 * (sol.t[i] + sol.t[i + 1]);
    worst = std::max(worst, std::abs(sol.interpolate(tm)(1) + std::sin(tm)));
  }
  CHECK(worst < 1e-6);
  CHECK(sol.interpolate(sol.t[3]) == sol.x[3]);
  CHECK(sol.locate(sol.t[5]) <= 5);
}

TEST_CASE("final step lands on the end time", "[rk45]")
{
  Rk45Options opts;
  opts.max_step = 0.3;
  const OdeSolution sol = integrate_rk45(oscillator, Eigen::Vector2d(1.0, 0.0), 0.0, 1.0, opts);
  CHECK(sol.t.back() == 1.0);
  for (std::size_t i = 1; i < sol.size(); i++)
  {
    CHECK(sol.t[i] - sol.t[i - 1] <= 0.3 + 1e-15);
  }
}

TEST_CASE("step storage can be disabled", "[rk45]")
{
  Rk45Options opts;
  opts.store_steps = false;
  opts.output_times = {0.0, 0.5, 1.0};
  const OdeSolution sol = integrate_rk45(oscillator, Eigen::Vector2d(1.0, 0.0), 0.0, 1.0, opts);
  CHECK(sol.size() == 2);
  CHECK(sol.dense.empty());
  CHECK(sol.out_x.size() == 3);
  CHECK(sol.out_x[1](0) == Approx(std::cos(0.5)).margin(1e-4));
}

TEST_CASE("solver failures", "[rk45]")
{
  Rk45Options opts;
  opts.max_steps = 5;
  CHECK_THROWS_AS(integrate_rk45(oscillator, Eigen::Vector2d(1.0, 0.0), 0.0, 100.0, opts),
                  SolverError);
  // Finite-time blow-up forces the step size to underflow.
  const OdeRhs blowup = [](double, const Eigen::Ref<const Eigen::VectorXd> &x,
                           Eigen::Ref<Eigen::VectorXd> dx) { dx(0) = x(0) * x(0); };
  CHECK_THROWS_AS(integrate_rk45(blowup, Eigen::VectorXd::Ones(1), 0.0, 2.0), SolverError);
}

TEST_CASE("uniform grid", "[rk45]")
{
  const auto g = uniform_grid(0.0, 100.0, 1001);
  CHECK(g.size() == 1001);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 100.0);
  CHECK(g[500] == 50.0);
}
