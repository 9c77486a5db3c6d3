// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/mor.hpp"

#include <algorithm>
#include <vector>
#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <fmt/format.h>
#include <json.hpp>
#include "sgph/errors.hpp"

namespace sgph
{

ProjectionBasis soar(const Eigen::MatrixXd &K, const Eigen::MatrixXd &D, const Eigen::MatrixXd &M,
                     const Eigen::Ref<const Eigen::VectorXd> &b, Eigen::Index r_max,
                     double defl_tol)
{
  const Eigen::Index n = K.rows();
  if (K.cols() != n || D.rows() != n || D.cols() != n || M.rows() != n || M.cols() != n ||
      b.size() != n)
  {
    throw DomainError("soar: inconsistent dimensions");
  }
  if (r_max < 1)
  {
    throw DomainError(fmt::format("soar: r_max must be positive (got {})", r_max));
  }
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success)
  {
    throw SolverError("soar: stiffness matrix is not positive definite");
  }

  ProjectionBasis basis;
  basis.requested = static_cast<std::size_t>(r_max);
  r_max = std::min(r_max, n);

  Eigen::VectorXd v = llt.solve(b);
  const double v_norm = v.norm();
  if (!(v_norm > 0.0))
  {
    throw DomainError("soar: start vector K^-1 b is zero");
  }

  // Q holds the Arnoldi vectors (zero columns mark deflations), P the
  // auxiliary sequence.
  std::vector<Eigen::VectorXd> Q, P;
  Q.push_back(v / v_norm);
  P.push_back(Eigen::VectorXd::Zero(n));
  std::vector<Eigen::Index> kept = {0};

  // A deflation is a true breakdown only if the auxiliary vector is also
  // spent, i.e. lies in the span of the auxiliaries of earlier deflations
  // (kept orthonormal in Pd). The first-order space has dimension 2n.
  const Eigen::Index max_iterations = 2 * n + 2;
  std::vector<Eigen::VectorXd> Pd;
  Eigen::VectorXd r(n), s(n), w(n);
  for (Eigen::Index j = 0; static_cast<Eigen::Index>(kept.size()) < r_max; j++)
  {
    if (j >= max_iterations)
    {
      basis.exhausted = true;
      break;
    }
    r = -llt.solve(D * Q[j] + M * P[j]);
    s = Q[j];
    const double norm_before = r.norm();
    for (int pass = 0; pass < 2; pass++)
    {
      for (Eigen::Index i : kept)
      {
        const double h = Q[i].dot(r);
        r -= h * Q[i];
        s -= h * P[i];
      }
    }
    const double h = r.norm();
    basis.iterations++;
    if (h > defl_tol * norm_before && h > 0.0)
    {
      Q.push_back(r / h);
      P.push_back(s / h);
      kept.push_back(static_cast<Eigen::Index>(Q.size()) - 1);
      continue;
    }
    const double s_norm = s.norm();
    w = s;
    for (int pass = 0; pass < 2; pass++)
    {
      for (const auto &pd : Pd)
      {
        w -= pd.dot(w) * pd;
      }
    }
    const double w_norm = w.norm();
    if (!(w_norm > defl_tol * s_norm))
    {
      basis.exhausted = true;
      break;
    }
    basis.deflations++;
    Pd.push_back(w / w_norm);
    Q.push_back(Eigen::VectorXd::Zero(n));
    P.push_back(s / s_norm);
  }

  basis.V.resize(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); c++)
  {
    basis.V.col(static_cast<Eigen::Index>(c)) = Q[kept[c]];
  }
  return basis;
}

ProjectionBasis soar(const GalerkinSecondOrderSystem &sys, Eigen::Index r_max, double defl_tol)
{
  const auto &g = sys.system;
  return soar(g.K, g.D, g.M, g.B.col(0), r_max, defl_tol);
}

ProjectionBasis complete_basis(const ProjectionBasis &basis)
{
  const Eigen::Index n = basis.V.rows(), k = basis.rank();
  ProjectionBasis out = basis;
  out.exhausted = false;
  if (k >= n)
  {
    return out;
  }
  // Householder QR of V: the trailing n-k columns of Q span the complement.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis.V);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  out.V.conservativeResize(n, n);
  out.V.rightCols(n - k) = Q.rightCols(n - k);
  return out;
}

ReducedSecondOrderSystem reduce(const ConstantSecondOrderSystem &fom, const ProjectionBasis &basis,
                                Eigen::Index r, double tol)
{
  fom.check_dimensions();
  if (basis.V.rows() != fom.dimension())
  {
    throw DomainError(fmt::format("reduce: basis has {} rows, system dimension is {}",
                                  basis.V.rows(), fom.dimension()));
  }
  if (r < 1 || r > basis.rank())
  {
    throw DomainError(fmt::format("reduce: r = {} outside [1, {}]", r, basis.rank()));
  }
  const auto V = basis.V.leftCols(r);
  ReducedSecondOrderSystem rom;
  rom.r = r;
  rom.parent_dimension = fom.dimension();
  auto &sys = rom.system;
  sys.M = V.transpose() * fom.M * V;
  sys.D = V.transpose() * fom.D * V;
  sys.K = V.transpose() * fom.K * V;
  sys.B = V.transpose() * fom.B;
  sys.F = fom.F * V;
  sys.G = fom.G * V;
  certify(sys, tol);
  require_certified(sys, fmt::format("reduced model r={}", r));
  return rom;
}

ReducedSecondOrderSystem reduce(const GalerkinSecondOrderSystem &fom, const ProjectionBasis &basis,
                                Eigen::Index r, double tol)
{
  return reduce(fom.system, basis, r, tol);
}

std::string StructureReport::to_json() const
{
  const auto cert = [](const DefinitenessCertificate &c) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(c.kind));
    j["lambda_min"] = c.lambda_min;
    j["lambda_max"] = c.lambda_max;
    return j;
  };
  nlohmann::ordered_json j;
  j["r"] = r;
  j["symmetry_M"] = symmetry_mass;
  j["symmetry_D"] = symmetry_damping;
  j["symmetry_K"] = symmetry_stiffness;
  j["M"] = cert(mass);
  j["D"] = cert(damping);
  j["K"] = cert(stiffness);
  j["structure_ok"] = structure_ok;
  j["stable"] = stable;
  return j.dump();
}

StructureReport structure_report(const ConstantSecondOrderSystem &sys, double tol)
{
  const auto rel_asym = [](const Eigen::MatrixXd &A) {
    const double scale = A.cwiseAbs().maxCoeff();
    return scale > 0.0 ? (A - A.transpose()).cwiseAbs().maxCoeff() / scale : 0.0;
  };
  StructureReport rep;
  rep.r = sys.dimension();
  rep.symmetry_mass = rel_asym(sys.M);
  rep.symmetry_damping = rel_asym(sys.D);
  rep.symmetry_stiffness = rel_asym(sys.K);
  rep.mass = certify_definiteness(sys.M, tol);
  rep.damping = certify_definiteness(sys.D, tol);
  rep.stiffness = certify_definiteness(sys.K, tol);
  rep.structure_ok = rep.mass.is_spd() && rep.stiffness.is_spd() && rep.damping.is_spsd();
  rep.stable = rep.structure_ok && rep.damping.is_spd();
  return rep;
}

StructureReport structure_report(const ReducedSecondOrderSystem &rom, double tol)
{
  return structure_report(rom.system, tol);
}

}  // namespace sgph
