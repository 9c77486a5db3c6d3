// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/rk45.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include "sgph/errors.hpp"

namespace sgph
{

namespace
{

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension of order 4.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double safety = 0.9, fac_min = 0.2, fac_max = 5.0;
constexpr double k_i = 0.7 / 5.0, k_p = 0.4 / 5.0;

double rms_norm(const Eigen::VectorXd &err, const Eigen::VectorXd &x0, const Eigen::VectorXd &x1,
                double rtol, double atol)
{
  if (err.size() == 0)
  {
    return 0.0;
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < err.size(); i++)
  {
    const double sk = atol + rtol * std::max(std::abs(x0(i)), std::abs(x1(i)));
    const double e = err(i) / sk;
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

double initial_step(const OdeRhs &f, double t0, const Eigen::VectorXd &x0,
                    const Eigen::VectorXd &f0, double span, double rtol, double atol,
                    std::size_t &evals)
{
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(x0.size());
  const double dnf = rms_norm(f0, x0, zero, rtol, atol);
  const double dny = rms_norm(x0, x0, zero, rtol, atol);
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
  h = std::min(h, span);
  Eigen::VectorXd x1 = x0 + h * f0, f1(x0.size());
  f(t0 + h, x1, f1);
  evals++;
  const double der2 = rms_norm(f1 - f0, x0, zero, rtol, atol) / h;
  const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3)
                                   : std::pow(0.01 / der12, 1.0 / 5.0);
  return std::min({100.0 * std::abs(h), h1, span});
}

}  // namespace

std::size_t OdeSolution::locate(double time) const
{
  if (t.size() < 2)
  {
    return 0;
  }
  auto it = std::upper_bound(t.begin(), t.end(), time);
  auto i = static_cast<std::size_t>(it - t.begin());
  i = i == 0 ? 0 : i - 1;
  return std::min(i, t.size() - 2);
}

Eigen::VectorXd OdeSolution::interpolate(double time) const
{
  if (t.empty() || time < t.front() || time > t.back())
  {
    throw DomainError(fmt::format("interpolation time {} outside the solution span", time));
  }
  if (t.size() == 1)
  {
    return x.front();
  }
  return interpolate(locate(time), time);
}

Eigen::VectorXd OdeSolution::interpolate(std::size_t i, double time) const
{
  if (dense.size() + 1 != t.size())
  {
    throw DomainError("solution was computed without stored steps");
  }
  const double h = t[i + 1] - t[i];
  const double th = (time - t[i]) / h, th1 = 1.0 - th;
  const Eigen::VectorXd r2 = x[i + 1] - x[i];
  const Eigen::VectorXd r3 = h * dx[i] - r2;
  const Eigen::VectorXd r4 = r2 - h * dx[i + 1] - r3;
  return x[i] + th * (r2 + th1 * (r3 + th * (r4 + th1 * dense[i])));
}

OdeSolution integrate_rk45(const OdeRhs &f, const Eigen::Ref<const Eigen::VectorXd> &x0, double t0,
                           double t1, const Rk45Options &options)
{
  if (!(t1 > t0))
  {
    throw DomainError(fmt::format("integration interval [{}, {}] is empty", t0, t1));
  }
  if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0))
  {
    throw DomainError("integration tolerances must be positive");
  }
  const auto &outs = options.output_times;
  for (std::size_t i = 0; i < outs.size(); i++)
  {
    if (outs[i] < t0 || outs[i] > t1 || (i > 0 && outs[i] < outs[i - 1]))
    {
      throw DomainError("output times must be sorted and inside the integration interval");
    }
  }
  const double rtol = options.rel_tol, atol = options.abs_tol;
  const Eigen::Index n = x0.size();

  OdeSolution sol;
  sol.rel_tol = rtol;
  sol.abs_tol = atol;
  auto &stats = sol.stats;

  Eigen::VectorXd x = x0, xn(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), err(n);
  f(t0, x, k1);
  stats.evaluations++;

  double t = t0;
  std::size_t next_out = 0;
  while (next_out < outs.size() && outs[next_out] == t0)
  {
    sol.out_t.push_back(t0);
    sol.out_x.push_back(x);
    next_out++;
  }
  sol.t.push_back(t0);
  sol.x.push_back(x);
  sol.dx.push_back(k1);

  double h = options.initial_step > 0.0
                 ? options.initial_step
                 : initial_step(f, t0, x, k1, t1 - t0, rtol, atol, stats.evaluations);
  h = std::min(h, options.max_step);
  double err_old = 1e-4;
  bool rejected = false;
  Eigen::VectorXd r1(n), r2(n), r3(n), r4(n), r5(n);

  while (t < t1)
  {
    if (stats.accepted + stats.rejected >= options.max_steps)
    {
      throw SolverError(fmt::format("RK45: step limit {} reached at t = {}", options.max_steps, t));
    }
    bool last = false;
    if (t + h >= t1 || t + 1.01 * h >= t1)
    {
      h = t1 - t;
      last = true;
    }
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
    {
      throw SolverError(fmt::format("RK45: step size underflow at t = {}", t));
    }

    tmp = x + h * a21 * k1;
    f(t + c2 * h, tmp, k2);
    tmp = x + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, tmp, k3);
    tmp = x + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, tmp, k4);
    tmp = x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, tmp, k5);
    tmp = x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, tmp, k6);
    xn = x + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double t_new = last ? t1 : t + h;
    f(t_new, xn, k7);
    stats.evaluations += 6;
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double e = rms_norm(err, x, xn, rtol, atol);
    if (!std::isfinite(e))
    {
      throw SolverError(fmt::format("RK45: non-finite error estimate at t = {}", t));
    }

    if (e <= 1.0)
    {
      const double e_safe = std::max(e, 1e-10);
      double fac = safety * std::pow(e_safe, -k_i) * std::pow(err_old, k_p);
      fac = std::clamp(fac, fac_min, fac_max);
      if (rejected)
      {
        fac = std::min(fac, 1.0);
      }
      err_old = std::max(e, 1e-4);

      const bool keep = options.store_steps || t_new == t1;
      const bool sample = next_out < outs.size() && outs[next_out] <= t_new;
      if (keep || sample)
      {
        r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      }
      if (sample)
      {
        r1 = x;
        r2 = xn - x;
        r3 = h * k1 - r2;
        r4 = r2 - h * k7 - r3;
        while (next_out < outs.size() && outs[next_out] <= t_new)
        {
          const double th = (outs[next_out] - t) / h, th1 = 1.0 - th;
          sol.out_t.push_back(outs[next_out]);
          if (outs[next_out] == t_new)
          {
            sol.out_x.push_back(xn);
          }
          else
          {
            sol.out_x.push_back(r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5))));
          }
          next_out++;
        }
      }

      const double t_prev = t;
      t = t_new;
      x.swap(xn);
      k1.swap(k7);
      stats.accepted++;
      if (keep)
      {
        if (sol.t.back() == t_prev)
        {
          sol.dense.push_back(r5);
        }
        else
        {
          // Without stored steps only the end point is kept; there is no
          // continuous extension across the gap.
          sol.dense.clear();
        }
        sol.t.push_back(t);
        sol.x.push_back(x);
        sol.dx.push_back(k1);
      }
      rejected = false;
      h = std::min(h * fac, options.max_step);
    }
    else
    {
      stats.rejected++;
      rejected = true;
      h *= std::max(fac_min, safety * std::pow(e, -k_i));
    }
  }
  return sol;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n)
{
  if (n < 2)
  {
    throw DomainError("uniform grid needs at least two points");
  }
  std::vector<double> g(n);
  const double step = (t1 - t0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; i++)
  {
    g[i] = t0 + static_cast<double>(i) * step;
  }
  g.back() = t1;
  return g;
}

}  // namespace sgph
