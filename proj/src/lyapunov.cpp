// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include "sgph/errors.hpp"

namespace sgph
{

LyapunovSolution solve_lyapunov(const Eigen::MatrixXd &A, const Eigen::MatrixXd &B,
                                double max_residual)
{
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n)
  {
    throw DomainError("solve_lyapunov: inconsistent dimensions");
  }
  Eigen::ComplexSchur<Eigen::MatrixXd> schur(A);
  if (schur.info() != Eigen::Success)
  {
    throw SolverError("solve_lyapunov: Schur decomposition did not converge");
  }
  const Eigen::MatrixXcd &T = schur.matrixT();
  const Eigen::MatrixXcd &U = schur.matrixU();

  LyapunovSolution sol;
  sol.spectral_abscissa = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; j++)
  {
    sol.spectral_abscissa = std::max(sol.spectral_abscissa, T(j, j).real());
  }
  if (!(sol.spectral_abscissa < 0.0))
  {
    throw SolverError(fmt::format("system is not asymptotically stable (max Re eig = {:.3e})",
                                  sol.spectral_abscissa));
  }

  // T X + X T^H + G G^H = 0 with X = L L^H, L upper triangular, solved from
  // the last row/column upwards.
  Eigen::MatrixXcd G = U.adjoint() * B;
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = n - 1; j >= 0; j--)
  {
    const std::complex<double> tau = T(j, j);
    const double xi = -G.row(j).squaredNorm() / (2.0 * tau.real());
    const double lambda = std::sqrt(xi);
    L(j, j) = lambda;
    if (j == 0 || lambda == 0.0)
    {
      continue;
    }
    Eigen::MatrixXcd T1 = T.topLeftCorner(j, j);
    T1.diagonal().array() += std::conj(tau);
    const Eigen::VectorXcd rhs =
        -(T.col(j).head(j) * xi + G.topRows(j) * G.row(j).adjoint());
    const Eigen::VectorXcd x = T1.triangularView<Eigen::Upper>().solve(rhs);
    const Eigen::VectorXcd l = x / lambda;
    L.col(j).head(j) = l;
    G.topRows(j) -= l * G.row(j) / lambda;
  }

  sol.Z = U * L;
  sol.P = (sol.Z * sol.Z.adjoint()).real();
  const Eigen::MatrixXd BBt = B * B.transpose();
  const double bnorm = BBt.norm();
  const Eigen::MatrixXd res = A * sol.P + sol.P * A.transpose() + BBt;
  sol.residual = bnorm > 0.0 ? res.norm() / bnorm : res.norm();
  if (!(sol.residual <= max_residual))
  {
    throw SolverError(fmt::format("Lyapunov residual {:.3e} exceeds {:.1e}", sol.residual,
                                  max_residual));
  }
  return sol;
}

}  // namespace sgph
