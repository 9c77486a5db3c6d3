// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/definiteness.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Eigenvalues>
#include "sgph/errors.hpp"

namespace sgph
{

std::string_view to_string(Definiteness d)
{
  switch (d)
  {
    case Definiteness::spd:
      return "SPD";
    case Definiteness::spsd:
      return "SPSD";
    case Definiteness::indefinite:
      return "indefinite";
    case Definiteness::unsymmetric:
      return "unsymmetric";
  }
  return "unknown";
}

DefinitenessCertificate certify_definiteness(const Eigen::Ref<const Eigen::MatrixXd> &A, double tol)
{
  if (A.rows() != A.cols())
  {
    throw DomainError("definiteness check needs a square matrix");
  }
  DefinitenessCertificate cert;
  cert.tol = tol;
  if (A.size() == 0)
  {
    cert.kind = Definiteness::spd;
    return cert;
  }
  cert.max_abs = A.cwiseAbs().maxCoeff();
  cert.asymmetry = (A - A.transpose()).cwiseAbs().maxCoeff();

  const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
  {
    throw SolverError("symmetric eigensolve failed in definiteness check");
  }
  cert.lambda_min = eig.eigenvalues().minCoeff();
  cert.lambda_max = eig.eigenvalues().maxCoeff();
  cert.norm2 = std::max(std::abs(cert.lambda_min), std::abs(cert.lambda_max));

  if (cert.asymmetry > tol * cert.max_abs)
  {
    cert.kind = Definiteness::unsymmetric;
  }
  else if (cert.lambda_min > tol * cert.norm2)
  {
    cert.kind = Definiteness::spd;
  }
  else if (cert.lambda_min >= -tol * cert.norm2)
  {
    cert.kind = Definiteness::spsd;
  }
  else
  {
    cert.kind = Definiteness::indefinite;
  }
  return cert;
}

Definiteness classify_definiteness(const Eigen::Ref<const Eigen::MatrixXd> &A, double tol)
{
  return certify_definiteness(A, tol).kind;
}

double skew_residual(const Eigen::Ref<const Eigen::MatrixXd> &A)
{
  if (A.size() == 0)
  {
    return 0.0;
  }
  return (A + A.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace sgph
