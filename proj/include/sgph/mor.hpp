// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_MOR_HPP
#define SGPH_MOR_HPP

#include <cstddef>
#include <string>
#include <Eigen/Core>
#include "sgph/definiteness.hpp"
#include "sgph/paramodel.hpp"
#include "sgph/sgalerkin.hpp"

namespace sgph
{

// Orthonormal columns in Krylov generation order; any leading block of
// columns is itself a valid basis.
struct ProjectionBasis
{
  Eigen::MatrixXd V;
  double s0 = 0.0;            // expansion point
  std::size_t requested = 0;  // r_max
  std::size_t iterations = 0;
  std::size_t deflations = 0;
  bool exhausted = false;     // subspace ran out before r_max

  Eigen::Index rank() const { return V.cols(); }
};

// Second-order Arnoldi at s0 = 0 for the pencil (K, D, M) with start vector
// K^-1 b: builds an orthonormal basis of span{r0, r1, r2, ...} with
// r0 = K^-1 b, r1 = A r0, r_j = A r_{j-1} + B r_{j-2}, A = -K^-1 D,
// B = -K^-1 M. K is factorized once (Cholesky). Modified Gram-Schmidt with one
// reorthogonalization; a candidate whose norm drops below
// defl_tol * (norm before orthogonalization) is deflated and only its
// auxiliary vector is carried on.
ProjectionBasis soar(const Eigen::MatrixXd &K, const Eigen::MatrixXd &D, const Eigen::MatrixXd &M,
                     const Eigen::Ref<const Eigen::VectorXd> &b, Eigen::Index r_max,
                     double defl_tol = 1e-12);

// Start vector: the input column of PC mode 0 (first column of B^).
ProjectionBasis soar(const GalerkinSecondOrderSystem &sys, Eigen::Index r_max,
                     double defl_tol = 1e-12);

// Appends an orthonormal basis of the orthogonal complement of span(V) so that
// the result has full rank V.rows(). The Krylov columns are kept unchanged and
// in front; exhausted is cleared.
ProjectionBasis complete_basis(const ProjectionBasis &basis);

struct ReducedSecondOrderSystem
{
  ConstantSecondOrderSystem system;  // certified
  Eigen::Index r = 0;
  Eigen::Index parent_dimension = 0;
};

// V_r^T (M, D, K) V_r, V_r^T B, (F, G) V_r with V_r the first r columns.
// Throws CertificationError if the reduced M, K are not SPD or D not SPSD.
ReducedSecondOrderSystem reduce(const ConstantSecondOrderSystem &fom, const ProjectionBasis &basis,
                                Eigen::Index r, double tol = 1e-10);
ReducedSecondOrderSystem reduce(const GalerkinSecondOrderSystem &fom, const ProjectionBasis &basis,
                                Eigen::Index r, double tol = 1e-10);

struct StructureReport
{
  Eigen::Index r = 0;
  double symmetry_mass = 0.0, symmetry_damping = 0.0, symmetry_stiffness = 0.0;  // relative
  DefinitenessCertificate mass, damping, stiffness;
  bool structure_ok = false;  // M, K SPD and D SPSD
  bool stable = false;        // additionally D SPD

  std::string to_json() const;
};

StructureReport structure_report(const ConstantSecondOrderSystem &sys, double tol = 1e-10);
StructureReport structure_report(const ReducedSecondOrderSystem &rom, double tol = 1e-10);

}  // namespace sgph

#endif  // SGPH_MOR_HPP
