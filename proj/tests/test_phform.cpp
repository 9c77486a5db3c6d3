// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <memory>
#include <random>
#include <catch_amalgamated.hpp>
#include <json.hpp>
#include "sgph/errors.hpp"
#include "sgph/phform.hpp"
#include "sgph/sgalerkin.hpp"
#include "sgph/simulate.hpp"

using namespace sgph;
using Catch::Approx;

namespace
{

ConstantSecondOrderSystem certified_msd()
{
  auto sys = msd_matrices(msd_default_means);
  certify(sys);
  return sys;
}

}  // namespace

TEST_CASE("embedding of a second-order system", "[phform]")
{
  const auto sys = certified_msd();
  const PHSystem ph = embed_second_order(sys);
  CHECK(ph.dimension() == 8);
  CHECK(ph.ports() == 1);
  CHECK(ph.E.topLeftCorner(4, 4) == sys.M);
  CHECK(ph.Q.bottomRightCorner(4, 4) == sys.K);
  CHECK(ph.R.topLeftCorner(4, 4) == sys.D);
  CHECK(ph.R.bottomRightCorner(4, 4).isZero());
  CHECK((ph.J + ph.J.transpose()).isZero());
  CHECK(ph.B.topRows(4) == sys.B);
  CHECK(ph.P.isZero());
  CHECK(ph.provenance == PHProvenance::deterministic);

  const ValidationReport rep = validate_ph(ph);
  CHECK(rep.passed());
  CHECK(rep.tol == 1e-10);
  CHECK(rep.lambda_min_eq == Approx(1.0));
  const auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["passed"] == true);

  CHECK_THROWS_AS(embed_second_order(msd_matrices(msd_default_means)), CertificationError);
}

TEST_CASE("validation catches broken structure", "[phform]")
{
  PHSystem ph = embed_second_order(certified_msd());
  ph.J(0, 4) = 0.5;
  CHECK_FALSE(validate_ph(ph).j_ok);
  ph = embed_second_order(certified_msd());
  ph.R(0, 0) = -1.0;
  CHECK_FALSE(validate_ph(ph).w_ok);
  ph = embed_second_order(certified_msd());
  ph.Q(7, 7) = -5.0;
  CHECK_FALSE(validate_ph(ph).eq_ok);
  CHECK(default_validation_tol(999) == 1e-10);
  CHECK(default_validation_tol(1000) == 1e-8);
}

TEST_CASE("Hamiltonian and output agree with the first-order model", "[phform]")
{
  const auto sys = certified_msd();
  const PHSystem ph = embed_second_order(sys);
  const FirstOrderModel m(sys);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(8, -1.0, 2.0);
  CHECK(hamiltonian(ph, x) == Approx(m.hamiltonian(x)));
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(1, 0.3);
  CHECK(ph_output(ph, x, u)(0) == Approx(m.output(x)(0)));
}

TEST_CASE("energy balance on simulated trajectories", "[phform]")
{
  const auto sys = certified_msd();
  const PHSystem ph = embed_second_order(sys);
  const Trajectory tr = simulate(sys, InputSignal::make_chirp(), 60.0, {});
  const DissipationAuditor auditor(ph, tr);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pick(0.0, 60.0);
  for (int k = 0; k < 50; k++)
  {
    double a = pick(rng), b = pick(rng);
    if (a > b)
    {
      std::swap(a, b);
    }
    const DissipationAudit r = auditor.audit(a, b);
    CHECK(r.inequality_ok);
    CHECK(r.balance_ok);
    CHECK(r.dissipated >= 0.0);
    const DissipationAudit single = dissipation_audit(ph, tr, a, b);
    CHECK(single.balance_residual == Approx(r.balance_residual).margin(1e-9 * r.tolerance + 1e-15));
  }
  CHECK(auditor.scale() == Approx(energy_scale(ph, tr)));
  CHECK_THROWS_AS(auditor.audit(-1.0, 2.0), DomainError);
}

TEST_CASE("free undamped motion conserves energy", "[phform]")
{
  ConstantSecondOrderSystem sys = msd_matrices(msd_default_means);
  sys.D.setZero();
  certify(sys);
  const PHSystem ph = embed_second_order(sys);
  Rk45Options opts;
  opts.rel_tol = 1e-9;
  opts.abs_tol = 1e-11;
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(8);
  x0(4) = 0.1;
  const Trajectory tr = simulate(sys, InputSignal::make_zero(), 10.0, opts, x0);
  const DissipationAudit r = dissipation_audit(ph, tr, 0.0, 10.0);
  CHECK(r.supplied == 0.0);
  CHECK(r.dissipated == 0.0);
  CHECK(std::abs(r.delta_h) < 1e-6 * hamiltonian(ph, x0));
}

TEST_CASE("Galerkin Hamiltonian equals the expected Hamiltonian of the approximant", "[phform]")
{
  static const std::array<int, 2> random = {0, 8};
  const auto sys = std::make_shared<ParametricSecondOrderSystem>(
      build_msd(msd_default_means, random, ParameterDomain({0.9, 9.0}, {1.1, 11.0})));
  const PCBasis basis(sys->domain(), 2);
  const auto g = assemble(sys, basis);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  Eigen::VectorXd p(g.dimension()), v(g.dimension());
  for (Eigen::Index i = 0; i < p.size(); i++)
  {
    p(i) = n(rng);
    v(i) = n(rng);
  }
  const double galerkin = 0.5 * (v.dot(g.system.M * v) + p.dot(g.system.K * p));
  const double expected = expected_hamiltonian_of_approximant(*sys, basis, p, v, gauss_tensor(2, 4));
  CHECK(expected == Approx(galerkin).epsilon(1e-12));
}
