// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <memory>
#include <random>
#include <catch_amalgamated.hpp>
#include "sgph/errors.hpp"
#include "sgph/parallel.hpp"
#include "sgph/sgalerkin.hpp"

using namespace sgph;
using Catch::Approx;

namespace
{

Eigen::MatrixXd random_matrix(std::mt19937_64 &rng, Eigen::Index r, Eigen::Index c)
{
  std::normal_distribution<double> n;
  Eigen::MatrixXd A(r, c);
  for (Eigen::Index i = 0; i < A.size(); i++)
  {
    A.data()[i] = n(rng);
  }
  return A;
}

std::shared_ptr<const ParametricSecondOrderSystem> q2_msd()
{
  static const std::array<int, 2> random = {0, 8};
  const ParameterDomain dom({0.9, 9.0}, {1.1, 11.0});
  return std::make_shared<ParametricSecondOrderSystem>(
      build_msd(msd_default_means, random, dom));
}

}  // namespace

TEST_CASE("affine projection agrees with the quadrature projection", "[sgalerkin]")
{
  std::mt19937_64 rng(7);
  const ParameterDomain dom({0.0, -1.0, 2.0}, {1.0, 3.0, 2.5});
  const AffineMatrixFamily f(random_matrix(rng, 3, 2), {{0, random_matrix(rng, 3, 2)},
                                                        {2, random_matrix(rng, 3, 2)},
                                                        {0, random_matrix(rng, 3, 2)}});
  for (int d : {0, 1, 2, 3})
  {
    const PCBasis basis(dom, d);
    const Eigen::MatrixXd exact = galerkin_project_affine(f, basis);
    const auto fn = [&](const Eigen::Ref<const Eigen::VectorXd> &mu) { return f.evaluate(mu); };
    const Eigen::MatrixXd quad =
        galerkin_project_quadrature(fn, 3, 2, basis, gauss_tensor(3, d + 1));
    REQUIRE(exact.rows() == 3 * static_cast<Eigen::Index>(basis.size()));
    CHECK((exact - quad).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("degree zero gives the system at the center", "[sgalerkin]")
{
  const auto sys = q2_msd();
  const PCBasis basis(sys->domain(), 0);
  const auto g = assemble(sys, basis);
  const auto c = sys->evaluate_center();
  CHECK(g.dimension() == 4);
  CHECK(g.system.M == c.M);
  CHECK(g.system.K == c.K);
  CHECK(g.system.B == c.B);
}

TEST_CASE("assembled system dimensions and symmetry", "[sgalerkin]")
{
  const auto sys = q2_msd();
  const PCBasis basis(sys->domain(), 2);
  const auto g = assemble(sys, basis);
  CHECK(g.s() == 6);
  CHECK(g.dimension() == 24);
  CHECK(g.system.inputs() == 6);
  CHECK(g.system.outputs() == 6);
  CHECK(g.system.certificate);
  CHECK(g.system.certificate->ok());
  CHECK((g.system.K - g.system.K.transpose()).cwiseAbs().maxCoeff() == 0.0);
  // K depends on k1 only (second variable): mode 0 couples to mode (0,1) but
  // not to (1,0), and (1,0), (0,1) differ in two places.
  CHECK_FALSE(g.system.K.block(0, 8, 4, 4).isZero());
  CHECK(g.system.K.block(0, 4, 4, 4).isZero());
  CHECK(g.system.K.block(4, 8, 4, 4).isZero());
  CHECK_FALSE(g.system.M.block(0, 4, 4, 4).isZero());
}

TEST_CASE("parallel and serial projection are bitwise equal", "[sgalerkin]")
{
  const ParameterDomain dom = randomize_domain(msd_default_means, 0.1);
  const auto sys = build_msd(dom);
  const PCBasis basis(dom, 2);
  const auto fn = [&](const Eigen::Ref<const Eigen::VectorXd> &mu) { return sys.K().evaluate(mu); };
  const QuadratureRule rule = stroud5(14);
  const Eigen::MatrixXd ref_affine = serial::galerkin_project_affine(sys.K(), basis);
  const Eigen::MatrixXd ref_quad = serial::galerkin_project_quadrature(fn, 4, 4, basis, rule);
  for (int threads : {1, 3})
  {
    set_threads(threads);
    CHECK(galerkin_project_affine(sys.K(), basis) == ref_affine);
    CHECK(galerkin_project_quadrature(fn, 4, 4, basis, rule) == ref_quad);
  }
  set_threads(1);
}

TEST_CASE("indefinite parametric input fails certification", "[sgalerkin]")
{
  const ParameterDomain dom({-1.0}, {1.0});
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(1, 1);
  auto sys = std::make_shared<ParametricSecondOrderSystem>(
      dom, AffineMatrixFamily(I), AffineMatrixFamily(I),
      AffineMatrixFamily(0.1 * I, {{0, I}}), AffineMatrixFamily(I), AffineMatrixFamily(I),
      AffineMatrixFamily(I));
  CHECK_THROWS_AS(assemble(sys, PCBasis(dom, 2)), CertificationError);
  CHECK_NOTHROW(assemble(sys, PCBasis(dom, 2), {1e-10, false}));
}

TEST_CASE("approximant expansion and statistics", "[sgalerkin]")
{
  const PCBasis basis(ParameterDomain({0.0, 0.0}, {1.0, 1.0}), 1);
  Eigen::VectorXd c(6);
  c << 1, 2, 3, 4, 5, 6;  // n = 2, s = 3
  const Eigen::Vector2d xi(0.5, -0.25);
  const Eigen::VectorXd v = expand_approximant(c, 2, basis, xi);
  const double p1 = std::sqrt(3.0) * 0.5, p2 = std::sqrt(3.0) * -0.25;
  CHECK(v(0) == Approx(1 + 3 * p1 + 5 * p2));
  CHECK(v(1) == Approx(2 + 4 * p1 + 6 * p2));
  const PCStatistics st = pc_statistics(c, 2);
  CHECK(st.mean == Eigen::Vector2d(1, 2));
  CHECK(st.std(0) == Approx(std::sqrt(9.0 + 25.0)));
  CHECK(st.std(1) == Approx(std::sqrt(16.0 + 36.0)));
  CHECK_THROWS_AS(pc_statistics(c, 4), DomainError);
  CHECK_THROWS_AS(expand_approximant(c, 3, basis, xi), DomainError);
}
