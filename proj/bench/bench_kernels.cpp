// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

// Serial reference kernels against their OpenMP versions. Run with
// OMP_NUM_THREADS set to the thread count of interest.

#include <memory>
#include <benchmark/benchmark.h>
#include "sgph/freq.hpp"
#include "sgph/sgalerkin.hpp"
#include "sgph/simulate.hpp"

using namespace sgph;

namespace
{

const ParametricSecondOrderSystem &msd14()
{
  static const ParametricSecondOrderSystem sys =
      build_msd(randomize_domain(msd_default_means, 0.1));
  return sys;
}

void affine(benchmark::State &state, bool parallel)
{
  const PCBasis basis(msd14().domain(), static_cast<int>(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(parallel ? galerkin_project_affine(msd14().K(), basis)
                                      : serial::galerkin_project_affine(msd14().K(), basis));
  }
}

void quadrature(benchmark::State &state, bool parallel)
{
  const PCBasis basis(msd14().domain(), static_cast<int>(state.range(0)));
  const QuadratureRule rule = stroud5(14);
  const MatrixFunction f = [](const Eigen::Ref<const Eigen::VectorXd> &mu) {
    return msd14().K().evaluate(mu);
  };
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(parallel
                                 ? galerkin_project_quadrature(f, 4, 4, basis, rule)
                                 : serial::galerkin_project_quadrature(f, 4, 4, basis, rule));
  }
}

void ensemble(benchmark::State &state, bool parallel)
{
  const QuadratureRule rule = stroud5(14);
  const InputSignal u = InputSignal::make_chirp();
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(
        parallel ? ensemble_expected_hamiltonian(msd14(), rule, u, 20.0, {}, 201)
                 : serial::ensemble_expected_hamiltonian(msd14(), rule, u, 20.0, {}, 201));
  }
}

void bode(benchmark::State &state, bool parallel)
{
  static const auto g = assemble(std::make_shared<ParametricSecondOrderSystem>(msd14()),
                                 PCBasis(msd14().domain(), 1));
  const TransferEvaluator te(restrict_ports(g.system));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(parallel ? bode_grid(te, 1e-2, 1e2, 400)
                                      : serial::bode_grid(te, 1e-2, 1e2, 400));
  }
}

}  // namespace

BENCHMARK_CAPTURE(affine, serial, false)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(affine, parallel, true)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(quadrature, serial, false)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(quadrature, parallel, true)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ensemble, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ensemble, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bode, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bode, parallel, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
