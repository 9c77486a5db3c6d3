// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/simulate.hpp"

#include <cmath>
#include <fmt/format.h>
#include "sgph/errors.hpp"
#include "sgph/parallel.hpp"

namespace sgph
{

FirstOrderModel::FirstOrderModel(const ConstantSecondOrderSystem &sys)
  : M_(sys.M), K_(sys.K), F_(sys.F), G_(sys.G)
{
  sys.check_dimensions();
  Eigen::LLT<Eigen::MatrixXd> llt(sys.M);
  if (llt.info() != Eigen::Success)
  {
    throw SolverError("first-order conversion: mass matrix is not positive definite");
  }
  MinvD_ = llt.solve(sys.D);
  MinvK_ = llt.solve(sys.K);
  MinvB_ = llt.solve(sys.B);
}

void FirstOrderModel::rhs(const Eigen::Ref<const Eigen::VectorXd> &u,
                          const Eigen::Ref<const Eigen::VectorXd> &x,
                          Eigen::Ref<Eigen::VectorXd> dx) const
{
  const Eigen::Index m = n();
  dx.head(m).noalias() = MinvB_ * u;
  dx.head(m).noalias() -= MinvD_ * x.head(m);
  dx.head(m).noalias() -= MinvK_ * x.tail(m);
  dx.tail(m) = x.head(m);
}

Eigen::VectorXd FirstOrderModel::output(const Eigen::Ref<const Eigen::VectorXd> &x) const
{
  const Eigen::Index m = n();
  return F_ * x.tail(m) + G_ * x.head(m);
}

double FirstOrderModel::hamiltonian(const Eigen::Ref<const Eigen::VectorXd> &x) const
{
  const Eigen::Index m = n();
  const auto v = x.head(m);
  const auto p = x.tail(m);
  return 0.5 * (v.dot(M_ * v) + p.dot(K_ * p));
}

FirstOrderModel to_first_order(const ConstantSecondOrderSystem &sys)
{
  return FirstOrderModel(sys);
}

namespace
{

OdeSolution integrate_model(const FirstOrderModel &model, const InputSignal &signal, double t_end,
                            const Rk45Options &options, const Eigen::VectorXd &x0)
{
  if (signal.inputs() != model.inputs())
  {
    throw DomainError(fmt::format("input signal has {} inputs, system has {}", signal.inputs(),
                                  model.inputs()));
  }
  Eigen::VectorXd u(model.inputs());
  OdeRhs f = [&](double t, const Eigen::Ref<const Eigen::VectorXd> &x,
                 Eigen::Ref<Eigen::VectorXd> dx) {
    signal.evaluate(t, u);
    model.rhs(u, x, dx);
  };
  return integrate_rk45(f, x0, 0.0, t_end, options);
}

Rk45Options with_grid(const Rk45Options &options, double t_end, std::size_t points, bool store)
{
  Rk45Options o = options;
  o.output_times = uniform_grid(0.0, t_end, points);
  o.store_steps = store;
  return o;
}

}  // namespace

Trajectory simulate(const ConstantSecondOrderSystem &sys, const InputSignal &signal, double t_end,
                    const Rk45Options &options, const std::optional<Eigen::VectorXd> &x0)
{
  const FirstOrderModel model(sys);
  const Eigen::VectorXd init = x0 ? *x0 : Eigen::VectorXd::Zero(model.state_dimension());
  if (init.size() != model.state_dimension())
  {
    throw DomainError(fmt::format("initial state has dimension {}, expected {}", init.size(),
                                  model.state_dimension()));
  }
  Trajectory traj;
  traj.signal = signal;
  traj.solution = integrate_model(model, signal, t_end, options, init);
  const auto N = static_cast<Eigen::Index>(traj.size());
  traj.y.resize(model.outputs(), N);
  traj.u.resize(model.inputs(), N);
  for (Eigen::Index i = 0; i < N; i++)
  {
    traj.y.col(i) = model.output(traj.solution.x[i]);
    traj.u.col(i) = signal(traj.solution.t[i]);
  }
  return traj;
}

GalerkinRun run_galerkin(const GalerkinSecondOrderSystem &sys, const InputSignal &signal,
                         double t_end, const Rk45Options &options, std::size_t grid_points)
{
  const Eigen::Index s = sys.s();
  const InputSignal lifted = signal.in_first_mode(s);
  GalerkinRun run;
  run.trajectory = simulate(sys.system, lifted, t_end, with_grid(options, t_end, grid_points, true));

  const FirstOrderModel model(sys.system);
  const Eigen::Index n_out = sys.base->outputs();
  const auto &sol = run.trajectory.solution;
  const auto G = static_cast<Eigen::Index>(sol.out_t.size());
  auto &series = run.series;
  series.t = sol.out_t;
  series.mean.resize(n_out, G);
  series.std.resize(n_out, G);
  series.hamiltonian.resize(G);
  for (Eigen::Index j = 0; j < G; j++)
  {
    const PCStatistics st = pc_statistics(model.output(sol.out_x[j]), n_out);
    series.mean.col(j) = st.mean;
    series.std.col(j) = st.std;
    series.hamiltonian(j) = model.hamiltonian(sol.out_x[j]);
  }
  return run;
}

SeriesResult run_deterministic(const ConstantSecondOrderSystem &sys, const InputSignal &signal,
                               double t_end, const Rk45Options &options, std::size_t grid_points)
{
  const FirstOrderModel model(sys);
  const OdeSolution sol =
      integrate_model(model, signal, t_end, with_grid(options, t_end, grid_points, false),
                      Eigen::VectorXd::Zero(model.state_dimension()));
  SeriesResult series;
  const auto G = static_cast<Eigen::Index>(sol.out_t.size());
  series.t = sol.out_t;
  series.mean.resize(model.outputs(), G);
  series.std = Eigen::MatrixXd::Zero(model.outputs(), G);
  series.hamiltonian.resize(G);
  for (Eigen::Index j = 0; j < G; j++)
  {
    series.mean.col(j) = model.output(sol.out_x[j]);
    series.hamiltonian(j) = model.hamiltonian(sol.out_x[j]);
  }
  return series;
}

namespace
{

template <typename Loop>
SeriesResult ensemble_impl(const ParametricSecondOrderSystem &sys, const QuadratureRule &rule,
                           const InputSignal &signal, double t_end, const Rk45Options &options,
                           std::size_t grid_points, Loop &&loop)
{
  if (rule.dimension() != sys.domain().dimension())
  {
    throw DomainError(fmt::format("quadrature rule has dimension {}, system has {} parameters",
                                  rule.dimension(), sys.domain().dimension()));
  }
  const auto N = static_cast<std::ptrdiff_t>(rule.size());
  const Rk45Options opts = with_grid(options, t_end, grid_points, false);
  const auto G = static_cast<Eigen::Index>(grid_points);
  const Eigen::Index p = sys.outputs();

  // Per-node series, combined afterwards in node order.
  std::vector<Eigen::MatrixXd> outputs(N);
  std::vector<Eigen::VectorXd> energies(N);
  loop(N, [&](std::ptrdiff_t j) {
    try
    {
      const FirstOrderModel model(sys.evaluate_standard(rule.nodes.col(j)));
      const OdeSolution sol = integrate_model(model, signal, t_end, opts,
                                              Eigen::VectorXd::Zero(model.state_dimension()));
      outputs[j].resize(p, G);
      energies[j].resize(G);
      for (Eigen::Index k = 0; k < G; k++)
      {
        outputs[j].col(k) = model.output(sol.out_x[k]);
        energies[j](k) = model.hamiltonian(sol.out_x[k]);
      }
    }
    catch (const SolverError &e)
    {
      throw SolverError(fmt::format("ensemble node {}: {}", j, e.what()));
    }
    catch (const std::exception &e)
    {
      throw Error(fmt::format("ensemble node {}: {}", j, e.what()));
    }
  });

  SeriesResult series;
  series.t = uniform_grid(0.0, t_end, grid_points);
  series.mean = Eigen::MatrixXd::Zero(p, G);
  series.std = Eigen::MatrixXd::Zero(p, G);
  series.hamiltonian = Eigen::VectorXd::Zero(G);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(p, G);
  for (std::ptrdiff_t j = 0; j < N; j++)
  {
    const double w = rule.weights(j);
    series.mean += w * outputs[j];
    second += w * outputs[j].cwiseAbs2();
    series.hamiltonian += w * energies[j];
  }
  series.std = (second - series.mean.cwiseAbs2()).cwiseMax(0.0).cwiseSqrt();
  return series;
}

}  // namespace

SeriesResult ensemble_expected_hamiltonian(const ParametricSecondOrderSystem &sys,
                                           const QuadratureRule &rule, const InputSignal &signal,
                                           double t_end, const Rk45Options &options,
                                           std::size_t grid_points)
{
  return ensemble_impl(sys, rule, signal, t_end, options, grid_points,
                       [](std::ptrdiff_t n, auto &&body) { parallel_for(n, body); });
}

namespace serial
{

SeriesResult ensemble_expected_hamiltonian(const ParametricSecondOrderSystem &sys,
                                           const QuadratureRule &rule, const InputSignal &signal,
                                           double t_end, const Rk45Options &options,
                                           std::size_t grid_points)
{
  return ensemble_impl(sys, rule, signal, t_end, options, grid_points,
                       [](std::ptrdiff_t n, auto &&body) { serial_for(n, body); });
}

}  // namespace serial

}  // namespace sgph
