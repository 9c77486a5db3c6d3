// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_LYAPUNOV_HPP
#define SGPH_LYAPUNOV_HPP

#include <Eigen/Core>

namespace sgph
{

// Controllability Gramian of a stable (A, B): A P + P A^T + B B^T = 0, in
// factored form P = Z Z^H.
struct LyapunovSolution
{
  Eigen::MatrixXcd Z;          // n x n, P = Re(Z Z^H)
  Eigen::MatrixXd P;
  double residual = 0.0;       // ||A P + P A^T + B B^T||_F / ||B B^T||_F
  double spectral_abscissa = 0.0;  // max Re(eig(A))
};

// Complex Schur form A = U T U^H, then Hammarling's method for the Cholesky
// factor of the transformed Gramian. Throws SolverError if A is not
// asymptotically stable or the residual exceeds max_residual.
LyapunovSolution solve_lyapunov(const Eigen::MatrixXd &A, const Eigen::MatrixXd &B,
                                double max_residual = 1e-8);

}  // namespace sgph

#endif  // SGPH_LYAPUNOV_HPP
