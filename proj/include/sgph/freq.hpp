// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_FREQ_HPP
#define SGPH_FREQ_HPP

#include <complex>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <vector>
#include <Eigen/Core>
#include "sgph/paramodel.hpp"

namespace sgph
{

// x' = A x + B u, y = C x.
struct StateSpace
{
  Eigen::MatrixXd A, B, C;

  Eigen::Index dimension() const { return A.rows(); }
};

// State (v, p): A = [[-M^-1 D, -M^-1 K], [I, 0]], B = [M^-1 B; 0], C = [G, F].
StateSpace first_order_realization(const ConstantSecondOrderSystem &sys);

// Keeps one input column and one output row (expected-value output of a
// Galerkin system: input 0 and output 0).
ConstantSecondOrderSystem restrict_ports(const ConstantSecondOrderSystem &sys,
                                         Eigen::Index input = 0, Eigen::Index output = 0);

// H(s) = (F + s G)(s^2 M + s D + K)^-1 B. The most recent frequency and its
// result are cached; the cache is mutex-guarded so an evaluator may be shared
// between threads.
class TransferEvaluator
{
public:
  explicit TransferEvaluator(const ConstantSecondOrderSystem &sys);

  Eigen::MatrixXcd operator()(std::complex<double> s) const;
  Eigen::Index inputs() const { return B_.cols(); }
  Eigen::Index outputs() const { return F_.rows(); }

private:
  Eigen::MatrixXd M_, D_, K_, B_, F_, G_;
  mutable std::mutex mutex_;
  mutable std::optional<std::pair<std::complex<double>, Eigen::MatrixXcd>> cache_;
};

struct BodeTable
{
  std::vector<double> omega, mag_db, phase_deg;
};

// Logarithmic grid with exact endpoints; 20 log10 |H(i w)| and the phase in
// degrees, unwrapped by removing jumps larger than 180 degrees. SISO only.
BodeTable bode_grid(const TransferEvaluator &te, double omega_min, double omega_max,
                    std::size_t points);
void write_bode_csv(std::ostream &os, const BodeTable &table);

struct H2Options
{
  double max_residual = 1e-8;
};

// sqrt(trace(C P C^T)) via the controllability Gramian. Throws SolverError
// for unstable systems.
double h2_norm(const StateSpace &sys, const H2Options &options = {});
double h2_norm(const ConstantSecondOrderSystem &sys, const H2Options &options = {});

// ||H_fom - H_rom||_H2 / ||H_fom||_H2 from the block-diagonal join with output
// difference [C_fom, -C_rom].
double relative_h2_error(const StateSpace &fom, const StateSpace &rom,
                         const H2Options &options = {});
double relative_h2_error(const ConstantSecondOrderSystem &fom, const ConstantSecondOrderSystem &rom,
                         const H2Options &options = {});

namespace serial
{

BodeTable bode_grid(const TransferEvaluator &te, double omega_min, double omega_max,
                    std::size_t points);

}  // namespace serial

}  // namespace sgph

#endif  // SGPH_FREQ_HPP
