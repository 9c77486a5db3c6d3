// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/freq.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <fmt/format.h>
#include "sgph/csv.hpp"
#include "sgph/errors.hpp"
#include "sgph/lyapunov.hpp"
#include "sgph/parallel.hpp"

namespace sgph
{

StateSpace first_order_realization(const ConstantSecondOrderSystem &sys)
{
  sys.check_dimensions();
  const Eigen::Index n = sys.dimension(), m = sys.inputs(), p = sys.outputs();
  Eigen::LLT<Eigen::MatrixXd> llt(sys.M);
  if (llt.info() != Eigen::Success)
  {
    throw SolverError("first-order realization: mass matrix is not positive definite");
  }
  StateSpace ss;
  ss.A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  ss.A.topLeftCorner(n, n) = -llt.solve(sys.D);
  ss.A.topRightCorner(n, n) = -llt.solve(sys.K);
  ss.A.bottomLeftCorner(n, n).setIdentity();
  ss.B = Eigen::MatrixXd::Zero(2 * n, m);
  ss.B.topRows(n) = llt.solve(sys.B);
  ss.C.resize(p, 2 * n);
  ss.C << sys.G, sys.F;
  return ss;
}

ConstantSecondOrderSystem restrict_ports(const ConstantSecondOrderSystem &sys, Eigen::Index input,
                                         Eigen::Index output)
{
  sys.check_dimensions();
  if (input < 0 || input >= sys.inputs() || output < 0 || output >= sys.outputs())
  {
    throw DomainError(fmt::format("restrict_ports: port ({}, {}) out of range ({} inputs, {} "
                                  "outputs)",
                                  input, output, sys.inputs(), sys.outputs()));
  }
  ConstantSecondOrderSystem out;
  out.M = sys.M;
  out.D = sys.D;
  out.K = sys.K;
  out.B = sys.B.col(input);
  out.F = sys.F.row(output);
  out.G = sys.G.row(output);
  out.certificate = sys.certificate;
  return out;
}

TransferEvaluator::TransferEvaluator(const ConstantSecondOrderSystem &sys)
  : M_(sys.M), D_(sys.D), K_(sys.K), B_(sys.B), F_(sys.F), G_(sys.G)
{
  sys.check_dimensions();
}

Eigen::MatrixXcd TransferEvaluator::operator()(std::complex<double> s) const
{
  {
    std::lock_guard lock(mutex_);
    if (cache_ && cache_->first == s)
    {
      return cache_->second;
    }
  }
  const Eigen::MatrixXcd pencil = (s * s) * M_.cast<std::complex<double>>() +
                                  s * D_.cast<std::complex<double>>() +
                                  K_.cast<std::complex<double>>();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(pencil);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14))
  {
    throw SolverError(fmt::format("transfer function: pencil singular at s = {}{:+}i "
                                  "(reciprocal condition estimate {:.3e})",
                                  s.real(), s.imag(), rcond));
  }
  const Eigen::MatrixXcd X = lu.solve(B_.cast<std::complex<double>>());
  Eigen::MatrixXcd H = F_.cast<std::complex<double>>() * X + s * (G_.cast<std::complex<double>>() * X);
  std::lock_guard lock(mutex_);
  cache_.emplace(s, H);
  return H;
}

namespace
{

template <typename Loop>
BodeTable bode_impl(const TransferEvaluator &te, double omega_min, double omega_max,
                    std::size_t points, Loop &&loop)
{
  if (te.inputs() != 1 || te.outputs() != 1)
  {
    throw DomainError(fmt::format("Bode data needs a SISO system (got {} inputs, {} outputs)",
                                  te.inputs(), te.outputs()));
  }
  if (!(omega_min > 0.0) || !(omega_max > omega_min) || points < 2)
  {
    throw DomainError(fmt::format("invalid Bode grid [{}, {}] with {} points", omega_min,
                                  omega_max, points));
  }
  BodeTable table;
  table.omega.resize(points);
  table.mag_db.resize(points);
  table.phase_deg.resize(points);
  const double a = std::log10(omega_min), b = std::log10(omega_max);
  for (std::size_t k = 0; k < points; k++)
  {
    table.omega[k] = std::pow(10.0, a + (b - a) * static_cast<double>(k) /
                                            static_cast<double>(points - 1));
  }
  table.omega.front() = omega_min;
  table.omega.back() = omega_max;

  std::vector<std::complex<double>> H(points);
  loop(static_cast<std::ptrdiff_t>(points), [&](std::ptrdiff_t k) {
    H[k] = te(std::complex<double>(0.0, table.omega[k]))(0, 0);
  });

  double offset = 0.0, previous = 0.0;
  for (std::size_t k = 0; k < points; k++)
  {
    table.mag_db[k] = 20.0 * std::log10(std::abs(H[k]));
    const double raw = std::arg(H[k]) * 180.0 / std::numbers::pi;
    if (k > 0)
    {
      const double jump = raw - previous;
      if (jump > 180.0)
      {
        offset -= 360.0;
      }
      else if (jump < -180.0)
      {
        offset += 360.0;
      }
    }
    previous = raw;
    table.phase_deg[k] = raw + offset;
  }
  return table;
}

}  // namespace

BodeTable bode_grid(const TransferEvaluator &te, double omega_min, double omega_max,
                    std::size_t points)
{
  return bode_impl(te, omega_min, omega_max, points,
                   [](std::ptrdiff_t n, auto &&body) { parallel_for(n, body); });
}

namespace serial
{

BodeTable bode_grid(const TransferEvaluator &te, double omega_min, double omega_max,
                    std::size_t points)
{
  return bode_impl(te, omega_min, omega_max, points,
                   [](std::ptrdiff_t n, auto &&body) { serial_for(n, body); });
}

}  // namespace serial

void write_bode_csv(std::ostream &os, const BodeTable &table)
{
  CsvWriter csv(os, {"omega", "mag_db", "phase_deg"});
  for (std::size_t k = 0; k < table.omega.size(); k++)
  {
    csv.row({table.omega[k], table.mag_db[k], table.phase_deg[k]});
  }
}

double h2_norm(const StateSpace &sys, const H2Options &options)
{
  const LyapunovSolution sol = solve_lyapunov(sys.A, sys.B, options.max_residual);
  return (sys.C.cast<std::complex<double>>() * sol.Z).norm();
}

double h2_norm(const ConstantSecondOrderSystem &sys, const H2Options &options)
{
  return h2_norm(first_order_realization(sys), options);
}

double relative_h2_error(const StateSpace &fom, const StateSpace &rom, const H2Options &options)
{
  if (fom.B.cols() != rom.B.cols() || fom.C.rows() != rom.C.rows())
  {
    throw DomainError("relative_h2_error: port dimensions differ");
  }
  const Eigen::Index n1 = fom.dimension(), n2 = rom.dimension();
  StateSpace diff;
  diff.A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  diff.A.topLeftCorner(n1, n1) = fom.A;
  diff.A.bottomRightCorner(n2, n2) = rom.A;
  diff.B.resize(n1 + n2, fom.B.cols());
  diff.B << fom.B, rom.B;
  diff.C.resize(fom.C.rows(), n1 + n2);
  diff.C << fom.C, -rom.C;
  const double base = h2_norm(fom, options);
  if (!(base > 0.0))
  {
    throw DomainError("relative_h2_error: reference system has zero H2 norm");
  }
  return h2_norm(diff, options) / base;
}

double relative_h2_error(const ConstantSecondOrderSystem &fom, const ConstantSecondOrderSystem &rom,
                         const H2Options &options)
{
  return relative_h2_error(first_order_realization(fom), first_order_realization(rom), options);
}

}  // namespace sgph
