// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_RK45_HPP
#define SGPH_RK45_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>
#include <Eigen/Core>

namespace sgph
{

using OdeRhs = std::function<void(double t, const Eigen::Ref<const Eigen::VectorXd> &x,
                                  Eigen::Ref<Eigen::VectorXd> dx)>;

struct Rk45Options
{
  double rel_tol = 1e-4;
  double abs_tol = 1e-6;
  double initial_step = 0.0;  // 0: automatic
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 10'000'000;
  // Keep every accepted step (state and derivative). Needed for audits.
  bool store_steps = true;
  // Times at which the dense output is sampled; must be sorted and inside
  // the integration interval.
  std::vector<double> output_times;
};

struct Rk45Stats
{
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
};

// Accepted-step grid with states x_i and derivatives f(t_i, x_i), plus dense
// samples at the requested output times. dense[i] is the one coefficient of
// the continuous extension on step i that is not determined by the states and
// derivatives at its ends.
struct OdeSolution
{
  std::vector<double> t;
  std::vector<Eigen::VectorXd> x, dx, dense;
  std::vector<double> out_t;
  std::vector<Eigen::VectorXd> out_x;
  Rk45Stats stats;
  double rel_tol = 0.0, abs_tol = 0.0;

  std::size_t size() const { return t.size(); }
  double t_begin() const { return t.front(); }
  double t_end() const { return t.back(); }

  // Index i with t[i] <= time <= t[i+1].
  std::size_t locate(double time) const;
  // Fourth-order continuous extension of the Dormand-Prince pair on the step
  // containing time.
  Eigen::VectorXd interpolate(double time) const;
  Eigen::VectorXd interpolate(std::size_t step, double time) const;
};

// Dormand-Prince 5(4) with weighted RMS error control
// (weights abs_tol + rel_tol max(|x_old|, |x_new|)), PI step-size control with
// gains 0.7/5 and 0.4/5, safety 0.9 and factor limits [0.2, 5]. The final step
// is shortened to hit t1 exactly. Throws SolverError if the step size
// underflows or max_steps is exceeded.
OdeSolution integrate_rk45(const OdeRhs &f, const Eigen::Ref<const Eigen::VectorXd> &x0, double t0,
                           double t1, const Rk45Options &options = {});

// n equidistant points on [t0, t1] with exact endpoints.
std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

}  // namespace sgph

#endif  // SGPH_RK45_HPP
