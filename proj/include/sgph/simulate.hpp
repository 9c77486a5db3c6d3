// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_SIMULATE_HPP
#define SGPH_SIMULATE_HPP

#include <optional>
#include <vector>
#include <Eigen/Cholesky>
#include <Eigen/Core>
#include "sgph/paramodel.hpp"
#include "sgph/quadrature.hpp"
#include "sgph/rk45.hpp"
#include "sgph/sgalerkin.hpp"
#include "sgph/signal.hpp"

namespace sgph
{

// x = (v, p) with v = p':  v' = M^-1 (B u - D v - K p),  p' = v,
// y = F p + G v. M is factorized once.
class FirstOrderModel
{
public:
  explicit FirstOrderModel(const ConstantSecondOrderSystem &sys);

  Eigen::Index n() const { return M_.rows(); }
  Eigen::Index state_dimension() const { return 2 * M_.rows(); }
  Eigen::Index inputs() const { return MinvB_.cols(); }
  Eigen::Index outputs() const { return F_.rows(); }

  void rhs(const Eigen::Ref<const Eigen::VectorXd> &u, const Eigen::Ref<const Eigen::VectorXd> &x,
           Eigen::Ref<Eigen::VectorXd> dx) const;
  Eigen::VectorXd output(const Eigen::Ref<const Eigen::VectorXd> &x) const;
  // 1/2 (v^T M v + p^T K p)
  double hamiltonian(const Eigen::Ref<const Eigen::VectorXd> &x) const;

private:
  Eigen::MatrixXd M_, K_, F_, G_;
  Eigen::MatrixXd MinvD_, MinvK_, MinvB_;
};

FirstOrderModel to_first_order(const ConstantSecondOrderSystem &sys);

struct Trajectory
{
  OdeSolution solution;
  InputSignal signal = InputSignal::make_zero();
  Eigen::MatrixXd y;  // outputs x accepted steps
  Eigen::MatrixXd u;  // inputs x accepted steps

  std::size_t size() const { return solution.size(); }
  const std::vector<double> &t() const { return solution.t; }
};

// Zero initial state unless x0 is given. Output times from options are
// sampled by dense output into solution.out_x.
Trajectory simulate(const ConstantSecondOrderSystem &sys, const InputSignal &signal, double t_end,
                    const Rk45Options &options,
                    const std::optional<Eigen::VectorXd> &x0 = std::nullopt);

// Time series on the common output grid.
struct SeriesResult
{
  std::vector<double> t;
  Eigen::MatrixXd mean, std;   // outputs x grid
  Eigen::VectorXd hamiltonian; // grid
};

struct GalerkinRun
{
  Trajectory trajectory;
  SeriesResult series;
};

// The deterministic signal is placed in PC mode 0. Series: PC mean and
// standard deviation of every physical output and the Galerkin Hamiltonian
// 1/2 (v^T M^ v + p^T K^ p) at the grid times.
GalerkinRun run_galerkin(const GalerkinSecondOrderSystem &sys, const InputSignal &signal,
                         double t_end, const Rk45Options &options, std::size_t grid_points = 1001);

// Single deterministic run; std is zero.
SeriesResult run_deterministic(const ConstantSecondOrderSystem &sys, const InputSignal &signal,
                               double t_end, const Rk45Options &options,
                               std::size_t grid_points = 1001);

// One IVP per quadrature node on a common grid; weighted sums over nodes in
// node order. mean/std refer to the outputs, hamiltonian is E[H](t).
SeriesResult ensemble_expected_hamiltonian(const ParametricSecondOrderSystem &sys,
                                           const QuadratureRule &rule, const InputSignal &signal,
                                           double t_end, const Rk45Options &options,
                                           std::size_t grid_points = 1001);

namespace serial
{

SeriesResult ensemble_expected_hamiltonian(const ParametricSecondOrderSystem &sys,
                                           const QuadratureRule &rule, const InputSignal &signal,
                                           double t_end, const Rk45Options &options,
                                           std::size_t grid_points = 1001);

}  // namespace serial

}  // namespace sgph

#endif  // SGPH_SIMULATE_HPP
