// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_PHFORM_HPP
#define SGPH_PHFORM_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>
#include <Eigen/Core>
#include "sgph/paramodel.hpp"
#include "sgph/pcbasis.hpp"
#include "sgph/quadrature.hpp"
#include "sgph/simulate.hpp"

namespace sgph
{

enum class PHProvenance
{
  deterministic,
  galerkin,
  reduced
};

std::string_view to_string(PHProvenance p);

// E x' = (J - R) Q x + (B - P) u,  y = (B + P)^T Q x + (S + N) u.
struct PHSystem
{
  Eigen::MatrixXd E, J, R, Q;  // N x N
  Eigen::MatrixXd B, P;        // N x m
  Eigen::MatrixXd S, N;        // m x m
  PHProvenance provenance = PHProvenance::deterministic;

  Eigen::Index dimension() const { return E.rows(); }
  Eigen::Index ports() const { return B.cols(); }
};

// For x = (p', p): E = diag(M, I), J = [[0,-I],[I,0]], R = diag(D, 0),
// Q = diag(I, K), B = [B; 0], P = S = N = 0. The output becomes B^T p'
// whatever F and G the system carries. Requires a passing certificate.
PHSystem embed_second_order(const ConstantSecondOrderSystem &sys,
                            PHProvenance provenance = PHProvenance::deterministic);

struct ValidationReport
{
  double tol = 0.0;
  double skew_j = 0.0, skew_n = 0.0;     // max |X + X^T|
  double asym_eq = 0.0;                  // max |E^T Q - Q^T E|
  double lambda_min_eq = 0.0;
  double lambda_min_w = 0.0, norm_w = 0.0;
  bool j_ok = false, n_ok = false, eq_ok = false, w_ok = false;

  bool passed() const { return j_ok && n_ok && eq_ok && w_ok; }
  std::string to_json() const;
};

// 1e-8 for dimension >= 1000, 1e-10 below.
double default_validation_tol(Eigen::Index dimension);

// J, N skew; E^T Q SPD; W = [[Q^T R Q, Q^T P], [P^T Q, S]] SPSD. Skewness and
// eigenvalue bounds are relative to the magnitude of the matrix involved.
ValidationReport validate_ph(const PHSystem &ph, std::optional<double> tol = std::nullopt);

// 1/2 x^T E^T Q x
double hamiltonian(const PHSystem &ph, const Eigen::Ref<const Eigen::VectorXd> &x);

Eigen::VectorXd ph_output(const PHSystem &ph, const Eigen::Ref<const Eigen::VectorXd> &x,
                          const Eigen::Ref<const Eigen::VectorXd> &u);

struct DissipationAudit
{
  double t1 = 0.0, t2 = 0.0;
  double delta_h = 0.0;        // H(x(t2)) - H(x(t1))
  double supplied = 0.0;       // int y^T u
  double dissipated = 0.0;     // int z^T W z, z = (Q x, u)
  double balance_residual = 0.0;
  double tolerance = 0.0;
  bool inequality_ok = false;  // delta_h <= supplied + tolerance
  bool balance_ok = false;     // balance_residual <= tolerance
};

// max_i H(x_i) over the stored steps (at least 1e-300).
double energy_scale(const PHSystem &ph, const Trajectory &traj);

// Energy balance over [t1, t2] on a trajectory of ph. The state between
// accepted steps is the continuous extension of the integrator; each step
// piece is integrated with 4-point Gauss-Legendre.
// tolerance = 10 (rel_tol * energy_scale + abs_tol) (t2 - t1).
DissipationAudit dissipation_audit(const PHSystem &ph, const Trajectory &traj, double t1, double t2);

// Same audit for many intervals of one trajectory: the per-step integrals are
// computed once and combined by prefix sums.
class DissipationAuditor
{
public:
  DissipationAuditor(const PHSystem &ph, const Trajectory &traj);

  double scale() const { return scale_; }
  DissipationAudit audit(double t1, double t2) const;

private:
  // Integrals of (y^T u, z^T W z) over [a, b] inside step i.
  std::pair<double, double> integrate_piece(std::size_t i, double a, double b) const;
  Eigen::VectorXd state(std::size_t i, double t) const;

  const PHSystem &ph_;
  const Trajectory &traj_;
  double scale_;
  std::vector<double> supplied_prefix_, dissipated_prefix_;
};

// E[1/2 (v~^T M(mu) v~ + p~^T K(mu) p~)] with p~, v~ the PC approximants of
// the stacked coefficients, by quadrature over the rule.
double expected_hamiltonian_of_approximant(const ParametricSecondOrderSystem &sys,
                                           const PCBasis &basis,
                                           const Eigen::Ref<const Eigen::VectorXd> &p_hat,
                                           const Eigen::Ref<const Eigen::VectorXd> &v_hat,
                                           const QuadratureRule &rule);

}  // namespace sgph

#endif  // SGPH_PHFORM_HPP
