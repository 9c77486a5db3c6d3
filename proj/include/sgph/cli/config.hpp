// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_CLI_CONFIG_HPP
#define SGPH_CLI_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>
#include "sgph/paramodel.hpp"
#include "sgph/quadrature.hpp"
#include "sgph/rk45.hpp"
#include "sgph/signal.hpp"

namespace sgph::cli
{

// Batch run description. Loaded from JSON with a strict schema: unknown keys,
// wrong types and out-of-range values raise ConfigError.
struct RunConfig
{
  struct Msd
  {
    std::vector<double> means{msd_default_means.begin(), msd_default_means.end()};
    double halfwidth = 0.1;
    // Names from msd_parameter_names; empty means all 14.
    std::vector<std::string> random_parameters;
  };

  // Explicit affine families over an explicit parameter box.
  struct General
  {
    std::vector<double> lower, upper;
    AffineMatrixFamily M, D, K, B, F, G;
  };

  struct Simulation
  {
    double t_end = 100.0;
    double rel_tol = 1e-4;
    double abs_tol = 1e-6;
    std::string signal = "chirp";  // chirp | zero | table
    std::vector<double> table_t, table_u;
    std::size_t output_points = 1001;
    std::string ensemble = "stroud5";  // stroud5 | gauss:<m> | none
  };

  struct Mor
  {
    int r_max = 50;
    std::vector<int> r_list;          // default 5..min(50, r_max)
    std::vector<int> hamiltonian_r = {10, 15};
    int bode_r = 30;
  };

  struct Freq
  {
    double omega_min = 1e-2;
    double omega_max = 1e2;
    std::size_t points = 400;
    // First-order dimension above which Lyapunov solves are refused.
    long max_lyapunov_dimension = 2400;
  };

  std::optional<Msd> msd;
  std::optional<General> general;
  int degree = 2;
  Simulation simulation;
  Mor mor;
  Freq freq;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;
  bool export_matrices = false;

  std::shared_ptr<const ParametricSecondOrderSystem> build_system() const;
  // Deterministic input with the physical input count of the model.
  InputSignal signal(Eigen::Index inputs) const;
  Rk45Options integrator() const;
  // nullopt for "none".
  std::optional<QuadratureRule> ensemble_rule(int q) const;
  std::vector<int> sweep() const;
};

RunConfig parse_config(const std::string &json_text);
RunConfig load_config(const std::filesystem::path &path);

}  // namespace sgph::cli

#endif  // SGPH_CLI_CONFIG_HPP
