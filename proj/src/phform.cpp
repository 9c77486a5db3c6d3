// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/phform.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <fmt/format.h>
#include <json.hpp>
#include "sgph/definiteness.hpp"
#include "sgph/errors.hpp"
#include "sgph/sgalerkin.hpp"

namespace sgph
{

std::string_view to_string(PHProvenance p)
{
  switch (p)
  {
    case PHProvenance::deterministic:
      return "deterministic";
    case PHProvenance::galerkin:
      return "galerkin";
    case PHProvenance::reduced:
      return "reduced";
  }
  return "unknown";
}

PHSystem embed_second_order(const ConstantSecondOrderSystem &sys, PHProvenance provenance)
{
  require_certified(sys, "port-Hamiltonian embedding");
  const Eigen::Index n = sys.dimension(), m = sys.inputs();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  PHSystem ph;
  ph.provenance = provenance;
  ph.E = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  ph.E.topLeftCorner(n, n) = sys.M;
  ph.E.bottomRightCorner(n, n) = I;
  ph.J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  ph.J.topRightCorner(n, n) = -I;
  ph.J.bottomLeftCorner(n, n) = I;
  ph.R = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  ph.R.topLeftCorner(n, n) = sys.D;
  ph.Q = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  ph.Q.topLeftCorner(n, n) = I;
  ph.Q.bottomRightCorner(n, n) = sys.K;
  ph.B = Eigen::MatrixXd::Zero(2 * n, m);
  ph.B.topRows(n) = sys.B;
  ph.P = Eigen::MatrixXd::Zero(2 * n, m);
  ph.S = Eigen::MatrixXd::Zero(m, m);
  ph.N = Eigen::MatrixXd::Zero(m, m);
  return ph;
}

std::string ValidationReport::to_json() const
{
  nlohmann::ordered_json j;
  j["tol"] = tol;
  j["skew_residual_J"] = skew_j;
  j["skew_residual_N"] = skew_n;
  j["asymmetry_EtQ"] = asym_eq;
  j["lambda_min_EtQ"] = lambda_min_eq;
  j["lambda_min_W"] = lambda_min_w;
  j["norm_W"] = norm_w;
  j["J_skew"] = j_ok;
  j["N_skew"] = n_ok;
  j["EtQ_spd"] = eq_ok;
  j["W_spsd"] = w_ok;
  j["passed"] = passed();
  return j.dump(2);
}

double default_validation_tol(Eigen::Index dimension)
{
  return dimension >= 1000 ? 1e-8 : 1e-10;
}

ValidationReport validate_ph(const PHSystem &ph, std::optional<double> tol)
{
  ValidationReport rep;
  rep.tol = tol ? *tol : default_validation_tol(ph.dimension());

  const auto skew_ok = [&](const Eigen::MatrixXd &X, double &residual) {
    residual = X.size() == 0 ? 0.0 : skew_residual(X);
    const double scale = X.size() == 0 ? 0.0 : X.cwiseAbs().maxCoeff();
    return residual <= rep.tol * std::max(1.0, scale);
  };
  rep.j_ok = skew_ok(ph.J, rep.skew_j);
  rep.n_ok = skew_ok(ph.N, rep.skew_n);

  const Eigen::MatrixXd EtQ = ph.E.transpose() * ph.Q;
  const DefinitenessCertificate ceq = certify_definiteness(EtQ, rep.tol);
  rep.asym_eq = ceq.asymmetry;
  rep.lambda_min_eq = ceq.lambda_min;
  rep.eq_ok = ceq.is_spd();

  const Eigen::Index N = ph.dimension(), m = ph.ports();
  Eigen::MatrixXd W(N + m, N + m);
  W.topLeftCorner(N, N) = ph.Q.transpose() * ph.R * ph.Q;
  W.topRightCorner(N, m) = ph.Q.transpose() * ph.P;
  W.bottomLeftCorner(m, N) = ph.P.transpose() * ph.Q;
  W.bottomRightCorner(m, m) = ph.S;
  const DefinitenessCertificate cw = certify_definiteness(W, rep.tol);
  rep.lambda_min_w = cw.lambda_min;
  rep.norm_w = cw.norm2;
  rep.w_ok = cw.is_spsd();
  return rep;
}

double hamiltonian(const PHSystem &ph, const Eigen::Ref<const Eigen::VectorXd> &x)
{
  if (x.size() != ph.dimension())
  {
    throw DomainError(fmt::format("state has dimension {}, expected {}", x.size(), ph.dimension()));
  }
  const Eigen::VectorXd Qx = ph.Q * x;
  return 0.5 * (ph.E * x).dot(Qx);
}

Eigen::VectorXd ph_output(const PHSystem &ph, const Eigen::Ref<const Eigen::VectorXd> &x,
                          const Eigen::Ref<const Eigen::VectorXd> &u)
{
  const Eigen::VectorXd Qx = ph.Q * x;
  return (ph.B + ph.P).transpose() * Qx + (ph.S + ph.N) * u;
}

double energy_scale(const PHSystem &ph, const Trajectory &traj)
{
  double scale = 1e-300;
  for (const auto &x : traj.solution.x)
  {
    scale = std::max(scale, hamiltonian(ph, x));
  }
  return scale;
}

namespace
{

// 4-point Gauss-Legendre on [-1, 1].
constexpr double gl_x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                            0.8611363115940526};
constexpr double gl_w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                            0.3478548451374538};

}  // namespace

DissipationAuditor::DissipationAuditor(const PHSystem &ph, const Trajectory &traj)
  : ph_(ph), traj_(traj)
{
  const auto &sol = traj.solution;
  if (sol.size() < 2 || sol.dense.size() + 1 != sol.size())
  {
    throw DomainError("dissipation audit needs a trajectory with stored steps");
  }
  if (sol.x.front().size() != ph.dimension())
  {
    throw DomainError(fmt::format("trajectory state dimension {} does not match the system ({})",
                                  sol.x.front().size(), ph.dimension()));
  }
  scale_ = energy_scale(ph, traj);
  supplied_prefix_.assign(sol.size(), 0.0);
  dissipated_prefix_.assign(sol.size(), 0.0);
  for (std::size_t i = 0; i + 1 < sol.size(); i++)
  {
    const auto [s, d] = integrate_piece(i, sol.t[i], sol.t[i + 1]);
    supplied_prefix_[i + 1] = supplied_prefix_[i] + s;
    dissipated_prefix_[i + 1] = dissipated_prefix_[i] + d;
  }
}

Eigen::VectorXd DissipationAuditor::state(std::size_t i, double t) const
{
  return traj_.solution.interpolate(i, t);
}

std::pair<double, double> DissipationAuditor::integrate_piece(std::size_t i, double a,
                                                               double b) const
{
  if (!(b > a))
  {
    return {0.0, 0.0};
  }
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double supplied = 0.0, dissipated = 0.0;
  for (int g = 0; g < 4; g++)
  {
    const double t = mid + half * gl_x[g];
    const Eigen::VectorXd x = state(i, t);
    const Eigen::VectorXd u = traj_.signal(t);
    const Eigen::VectorXd Qx = ph_.Q * x;
    const Eigen::VectorXd y = (ph_.B + ph_.P).transpose() * Qx + (ph_.S + ph_.N) * u;
    const double w = Qx.dot(ph_.R * Qx) + 2.0 * Qx.dot(ph_.P * u) + u.dot(ph_.S * u);
    supplied += gl_w[g] * y.dot(u);
    dissipated += gl_w[g] * w;
  }
  return {half * supplied, half * dissipated};
}

DissipationAudit DissipationAuditor::audit(double t1, double t2) const
{
  const auto &sol = traj_.solution;
  if (!(t1 <= t2) || t1 < sol.t_begin() || t2 > sol.t_end())
  {
    throw DomainError(fmt::format("audit interval [{}, {}] outside the trajectory span [{}, {}]",
                                  t1, t2, sol.t_begin(), sol.t_end()));
  }
  DissipationAudit a;
  a.t1 = t1;
  a.t2 = t2;
  const std::size_t i1 = sol.locate(t1), i2 = sol.locate(t2);
  if (i1 == i2)
  {
    std::tie(a.supplied, a.dissipated) = integrate_piece(i1, t1, t2);
  }
  else
  {
    const auto [s1, d1] = integrate_piece(i1, t1, sol.t[i1 + 1]);
    const auto [s2, d2] = integrate_piece(i2, sol.t[i2], t2);
    a.supplied = s1 + (supplied_prefix_[i2] - supplied_prefix_[i1 + 1]) + s2;
    a.dissipated = d1 + (dissipated_prefix_[i2] - dissipated_prefix_[i1 + 1]) + d2;
  }
  a.delta_h = hamiltonian(ph_, state(i2, t2)) - hamiltonian(ph_, state(i1, t1));
  a.balance_residual = std::abs(a.delta_h - (a.supplied - a.dissipated));
  a.tolerance = 10.0 * (sol.rel_tol * scale_ + sol.abs_tol) * (t2 - t1);
  a.inequality_ok = a.delta_h <= a.supplied + a.tolerance;
  a.balance_ok = a.balance_residual <= a.tolerance;
  return a;
}

DissipationAudit dissipation_audit(const PHSystem &ph, const Trajectory &traj, double t1, double t2)
{
  return DissipationAuditor(ph, traj).audit(t1, t2);
}

double expected_hamiltonian_of_approximant(const ParametricSecondOrderSystem &sys,
                                           const PCBasis &basis,
                                           const Eigen::Ref<const Eigen::VectorXd> &p_hat,
                                           const Eigen::Ref<const Eigen::VectorXd> &v_hat,
                                           const QuadratureRule &rule)
{
  const Eigen::Index n = sys.dimension();
  const Eigen::VectorXd p = p_hat, v = v_hat;
  return expectation(rule, [&](const Eigen::Ref<const Eigen::VectorXd> &xi) {
    const Eigen::VectorXd mu = sys.domain().to_physical(xi);
    const Eigen::VectorXd pt = expand_approximant(p, n, basis, xi);
    const Eigen::VectorXd vt = expand_approximant(v, n, basis, xi);
    return 0.5 * (vt.dot(sys.M().evaluate(mu) * vt) + pt.dot(sys.K().evaluate(mu) * pt));
  });
}

}  // namespace sgph
