// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_SGALERKIN_HPP
#define SGPH_SGALERKIN_HPP

#include <functional>
#include <memory>
#include <optional>
#include <Eigen/Core>
#include "sgph/paramodel.hpp"
#include "sgph/pcbasis.hpp"
#include "sgph/quadrature.hpp"

namespace sgph
{

// Stochastic Galerkin projection of an affine family: the (rows*s) x (cols*s)
// block matrix whose block (i,j) is E[A(mu) Phi_i Phi_j]
//   = delta_ij A(center) + sum_k h_k E[xi_k Phi_i Phi_j] A_k,
// computed exactly from the Legendre coupling coefficients. Block rows are
// filled concurrently.
Eigen::MatrixXd galerkin_project_affine(const AffineMatrixFamily &family, const PCBasis &basis);

using MatrixFunction = std::function<Eigen::MatrixXd(const Eigen::Ref<const Eigen::VectorXd> &mu)>;

// Same projection for an arbitrary matrix-valued function of the physical
// parameters, by quadrature: block (i,j) = sum_nodes w f(mu(xi)) Phi_i Phi_j.
// Exact when the rule integrates f * Phi_i * Phi_j exactly.
Eigen::MatrixXd galerkin_project_quadrature(const MatrixFunction &f, Eigen::Index rows,
                                            Eigen::Index cols, const PCBasis &basis,
                                            const QuadratureRule &rule);

namespace serial
{

Eigen::MatrixXd galerkin_project_affine(const AffineMatrixFamily &family, const PCBasis &basis);
Eigen::MatrixXd galerkin_project_quadrature(const MatrixFunction &f, Eigen::Index rows,
                                            Eigen::Index cols, const PCBasis &basis,
                                            const QuadratureRule &rule);

}  // namespace serial

struct AssembleOptions
{
  double tol = 1e-10;
  bool certify = true;
};

// The deterministic block system M^ p^'' + D^ p^' + K^ p^ = B^ u^,
// y^ = F^ p^ + G^ p^', of dimension n*s with n_in*s inputs and n_out*s
// outputs. Block i of every stacked vector is the coefficient of Phi_i.
struct GalerkinSecondOrderSystem
{
  std::shared_ptr<const ParametricSecondOrderSystem> base;
  PCBasis basis;
  ConstantSecondOrderSystem system;

  Eigen::Index n() const { return base->dimension(); }
  Eigen::Index s() const { return static_cast<Eigen::Index>(basis.size()); }
  Eigen::Index dimension() const { return system.dimension(); }
};

// Projects all six matrices. With options.certify, M^ and K^ must be SPD and
// D^ SPSD, otherwise CertificationError reports the smallest eigenvalues.
GalerkinSecondOrderSystem assemble(std::shared_ptr<const ParametricSecondOrderSystem> sys,
                                   const PCBasis &basis, const AssembleOptions &options = {});

// sum_i coeffs_i Phi_i(xi) for stacked coefficients (block i of length n).
Eigen::VectorXd expand_approximant(const Eigen::Ref<const Eigen::VectorXd> &coeffs, Eigen::Index n,
                                   const PCBasis &basis,
                                   const Eigen::Ref<const Eigen::VectorXd> &xi);

struct PCStatistics
{
  Eigen::VectorXd mean, std;
};

// Mean = block 0, std = sqrt(sum_{i>=1} block_i^2) componentwise.
PCStatistics pc_statistics(const Eigen::Ref<const Eigen::VectorXd> &coeffs, Eigen::Index n);

}  // namespace sgph

#endif  // SGPH_SGALERKIN_HPP
