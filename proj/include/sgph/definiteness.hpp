// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_DEFINITENESS_HPP
#define SGPH_DEFINITENESS_HPP

#include <string_view>
#include <Eigen/Core>

namespace sgph
{

enum class Definiteness
{
  spd,
  spsd,
  indefinite,
  unsymmetric
};

std::string_view to_string(Definiteness d);

// Quantitative symmetry/definiteness margin of a square matrix, from a dense
// symmetric eigensolve of (A + A^T)/2.
struct DefinitenessCertificate
{
  Definiteness kind = Definiteness::unsymmetric;
  double asymmetry = 0.0;   // max |A - A^T|
  double max_abs = 0.0;     // max |A|
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double norm2 = 0.0;       // spectral norm of the symmetric part
  double tol = 0.0;

  bool is_spd() const { return kind == Definiteness::spd; }
  // SPD counts as SPSD.
  bool is_spsd() const { return kind == Definiteness::spd || kind == Definiteness::spsd; }
};

// Symmetric if max|A - A^T| <= tol * max|A|; then SPD if lambda_min > tol *
// ||A||_2, SPSD if lambda_min >= -tol * ||A||_2, indefinite otherwise.
DefinitenessCertificate certify_definiteness(const Eigen::Ref<const Eigen::MatrixXd> &A,
                                             double tol = 1e-10);

Definiteness classify_definiteness(const Eigen::Ref<const Eigen::MatrixXd> &A, double tol = 1e-10);

// max |A + A^T|
double skew_residual(const Eigen::Ref<const Eigen::MatrixXd> &A);

}  // namespace sgph

#endif  // SGPH_DEFINITENESS_HPP
