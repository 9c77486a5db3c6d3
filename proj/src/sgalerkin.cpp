// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/sgalerkin.hpp"

#include <cmath>
#include <fmt/format.h>
#include "sgph/errors.hpp"
#include "sgph/parallel.hpp"

namespace sgph
{

namespace
{

// Per-parameter coefficient matrix (repeated terms summed) and A(center).
struct AffineParts
{
  Eigen::MatrixXd center;
  std::vector<Eigen::MatrixXd> slope;  // one per parameter; empty if unused
};

AffineParts split_family(const AffineMatrixFamily &family, const PCBasis &basis)
{
  const int q = basis.dimension();
  if (family.max_parameter() >= q)
  {
    throw DomainError(fmt::format("affine family references parameter {} but the basis has {}",
                                  family.max_parameter(), q));
  }
  AffineParts parts;
  parts.center = family.constant();
  parts.slope.resize(q);
  for (const auto &term : family.terms())
  {
    const int k = term.parameter;
    parts.center += basis.domain().center(k) * term.matrix;
    if (parts.slope[k].size() == 0)
    {
      parts.slope[k] = term.matrix;
    }
    else
    {
      parts.slope[k] += term.matrix;
    }
  }
  return parts;
}

template <typename Loop>
Eigen::MatrixXd project_affine(const AffineMatrixFamily &family, const PCBasis &basis, Loop &&loop)
{
  const AffineParts parts = split_family(family, basis);
  const Eigen::Index r = family.rows(), c = family.cols();
  const auto s = static_cast<Eigen::Index>(basis.size());
  const auto &indices = basis.index_set();
  const int q = basis.dimension();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(r * s, c * s);

  loop(static_cast<std::ptrdiff_t>(s), [&](std::ptrdiff_t i) {
    out.block(i * r, i * c, r, c) = parts.center;
    auto alpha = indices[i];
    for (int k = 0; k < q; k++)
    {
      const double h = basis.domain().half_width(k);
      if (parts.slope[k].size() == 0 || h == 0.0)
      {
        continue;
      }
      if (auto j = indices.raised(i, k); j != MultiIndexSet::npos)
      {
        out.block(i * r, static_cast<Eigen::Index>(j) * c, r, c) =
            (h * legendre_coupling(alpha[k])) * parts.slope[k];
      }
      if (auto j = indices.lowered(i, k); j != MultiIndexSet::npos)
      {
        out.block(i * r, static_cast<Eigen::Index>(j) * c, r, c) =
            (h * legendre_coupling(alpha[k] - 1)) * parts.slope[k];
      }
    }
  });
  return out;
}

template <typename Loop>
Eigen::MatrixXd project_quadrature(const MatrixFunction &f, Eigen::Index rows, Eigen::Index cols,
                                   const PCBasis &basis, const QuadratureRule &rule, Loop &&loop)
{
  if (rule.dimension() != basis.dimension())
  {
    throw DomainError(fmt::format("quadrature rule has dimension {}, basis has {}",
                                  rule.dimension(), basis.dimension()));
  }
  const auto N = static_cast<std::ptrdiff_t>(rule.size());
  const auto s = static_cast<Eigen::Index>(basis.size());

  // f and the basis at every node, evaluated once.
  std::vector<Eigen::MatrixXd> values(N);
  Eigen::MatrixXd phi(s, N);
  loop(N, [&](std::ptrdiff_t j) {
    try
    {
      values[j] = f(basis.domain().to_physical(rule.nodes.col(j)));
    }
    catch (const std::exception &e)
    {
      throw Error(fmt::format("matrix function failed at quadrature node {}: {}", j, e.what()));
    }
    if (values[j].rows() != rows || values[j].cols() != cols)
    {
      throw DomainError(fmt::format("matrix function returned {}x{} at node {}, expected {}x{}",
                                    values[j].rows(), values[j].cols(), j, rows, cols));
    }
    basis.evaluate(rule.nodes.col(j), phi.col(j));
  });

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows * s, cols * s);
  loop(static_cast<std::ptrdiff_t>(s), [&](std::ptrdiff_t i) {
    for (Eigen::Index j = 0; j < s; j++)
    {
      auto blk = out.block(i * rows, j * cols, rows, cols);
      for (std::ptrdiff_t n = 0; n < N; n++)
      {
        blk += (rule.weights(n) * phi(i, n) * phi(j, n)) * values[n];
      }
    }
  });
  return out;
}

constexpr auto parallel_loop = [](std::ptrdiff_t n, auto &&body) { parallel_for(n, body); };
constexpr auto serial_loop = [](std::ptrdiff_t n, auto &&body) { serial_for(n, body); };

}  // namespace

Eigen::MatrixXd galerkin_project_affine(const AffineMatrixFamily &family, const PCBasis &basis)
{
  return project_affine(family, basis, parallel_loop);
}

Eigen::MatrixXd galerkin_project_quadrature(const MatrixFunction &f, Eigen::Index rows,
                                            Eigen::Index cols, const PCBasis &basis,
                                            const QuadratureRule &rule)
{
  return project_quadrature(f, rows, cols, basis, rule, parallel_loop);
}

namespace serial
{

Eigen::MatrixXd galerkin_project_affine(const AffineMatrixFamily &family, const PCBasis &basis)
{
  return project_affine(family, basis, serial_loop);
}

Eigen::MatrixXd galerkin_project_quadrature(const MatrixFunction &f, Eigen::Index rows,
                                            Eigen::Index cols, const PCBasis &basis,
                                            const QuadratureRule &rule)
{
  return project_quadrature(f, rows, cols, basis, rule, serial_loop);
}

}  // namespace serial

GalerkinSecondOrderSystem assemble(std::shared_ptr<const ParametricSecondOrderSystem> sys,
                                   const PCBasis &basis, const AssembleOptions &options)
{
  if (!sys)
  {
    throw DomainError("assemble: null system");
  }
  if (sys->domain().dimension() != basis.dimension())
  {
    throw DomainError(fmt::format("assemble: system has {} parameters, basis has {}",
                                  sys->domain().dimension(), basis.dimension()));
  }
  GalerkinSecondOrderSystem out{sys, basis, {}};
  auto &g = out.system;
  g.M = galerkin_project_affine(sys->M(), basis);
  g.D = galerkin_project_affine(sys->D(), basis);
  g.K = galerkin_project_affine(sys->K(), basis);
  g.B = galerkin_project_affine(sys->B(), basis);
  g.F = galerkin_project_affine(sys->F(), basis);
  g.G = galerkin_project_affine(sys->G(), basis);
  if (options.certify)
  {
    certify(g, options.tol);
    require_certified(g, "Galerkin assembly");
  }
  return out;
}

Eigen::VectorXd expand_approximant(const Eigen::Ref<const Eigen::VectorXd> &coeffs, Eigen::Index n,
                                   const PCBasis &basis, const Eigen::Ref<const Eigen::VectorXd> &xi)
{
  const auto s = static_cast<Eigen::Index>(basis.size());
  if (coeffs.size() != n * s)
  {
    throw DomainError(fmt::format("expand_approximant: {} coefficients, expected n*s = {}",
                                  coeffs.size(), n * s));
  }
  const Eigen::VectorXd phi = basis.evaluate(xi);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < s; i++)
  {
    v += phi(i) * coeffs.segment(i * n, n);
  }
  return v;
}

PCStatistics pc_statistics(const Eigen::Ref<const Eigen::VectorXd> &coeffs, Eigen::Index n)
{
  if (n <= 0 || coeffs.size() % n != 0)
  {
    throw DomainError(fmt::format("pc_statistics: length {} is not a multiple of n = {}",
                                  coeffs.size(), n));
  }
  const Eigen::Index s = coeffs.size() / n;
  PCStatistics st;
  st.mean = coeffs.head(n);
  Eigen::VectorXd var = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 1; i < s; i++)
  {
    var += coeffs.segment(i * n, n).cwiseAbs2();
  }
  st.std = var.cwiseSqrt();
  return st;
}

}  // namespace sgph
