// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>
#include <catch_amalgamated.hpp>
#include <json.hpp>
#include "sgph/cli/commands.hpp"
#include "sgph/cli/config.hpp"
#include "sgph/errors.hpp"

using namespace sgph;
using namespace sgph::cli;
namespace fs = std::filesystem;

namespace
{

std::string read_file(const fs::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string &name)
{
  const fs::path dir = fs::temp_directory_path() / ("sgph_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

const char *small_config = R"({
  "model": { "msd": { "halfwidth": 0.1, "random_parameters": ["m1", "k1"] } },
  "basis": { "degree": 1 },
  "simulation": { "t_end": 20, "output_points": 201, "ensemble": "gauss:3" },
  "mor": { "r_max": 12, "r_list": [2, 4, 12], "hamiltonian_r": [4], "bode_r": 4 },
  "freq": { "points": 50 },
  "export_matrices": true
})";

std::string config_error(const std::string &text)
{
  try
  {
    parse_config(text);
  }
  catch (const ConfigError &e)
  {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults of a minimal configuration", "[cli]")
{
  const RunConfig cfg = parse_config(R"({"model": {"msd": {}}})");
  REQUIRE(cfg.msd);
  CHECK(cfg.degree == 2);
  CHECK(cfg.simulation.t_end == 100.0);
  CHECK(cfg.simulation.rel_tol == 1e-4);
  CHECK(cfg.simulation.abs_tol == 1e-6);
  CHECK(cfg.mor.r_max == 50);
  CHECK(cfg.sweep().front() == 5);
  CHECK(cfg.sweep().back() == 50);
  const auto sys = cfg.build_system();
  CHECK(sys->domain().dimension() == 14);
  CHECK(cfg.ensemble_rule(14)->size() == 393);
  CHECK(cfg.integrator().rel_tol == 1e-4);
}

TEST_CASE("configuration errors name the offending key", "[cli]")
{
  CHECK(config_error(R"({"model": {"msd": {}}, "basis": {"degre": 2}})").find("basis: unknown key 'degre'") !=
        std::string::npos);
  CHECK(config_error(R"({})").find("missing 'model'") != std::string::npos);
  CHECK(config_error(R"({"model": {"msd": {"means": [-1,1,1,1,1,1,1,1,1,1,1,1,1,1]}}})")
            .find("parameter m1 must be positive") != std::string::npos);
  CHECK(config_error(R"({"model": {"msd": {"random_parameters": ["m9"]}}})").find("m9") !=
        std::string::npos);
  CHECK(config_error(R"({"model": {"msd": {}}, "simulation": {"t_end": "long"}})")
            .find("simulation.t_end: wrong type") != std::string::npos);
  CHECK(config_error(R"({"model": {"msd": {}}, "simulation": {"ensemble": "gauss:x"}})") != "");
  CHECK(config_error("{not json") .find("not valid JSON") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/run.json"), ConfigError);
}

TEST_CASE("general affine model", "[cli]")
{
  const RunConfig cfg = parse_config(R"({
    "model": { "general": {
      "lower": [1.0], "upper": [2.0],
      "M": { "constant": [[1.0]] },
      "D": { "constant": [[0.5]] },
      "K": { "constant": [[0.0]], "terms": [{ "parameter": 0, "matrix": [[1.0]] }] },
      "B": { "constant": [[1.0]] },
      "F": { "constant": [[1.0]] },
      "G": { "constant": [[0.0]] } } },
    "basis": { "degree": 3 },
    "simulation": { "ensemble": "gauss:4" } })");
  REQUIRE(cfg.general);
  const auto sys = cfg.build_system();
  CHECK(sys->domain().dimension() == 1);
  CHECK(sys->evaluate_center().K(0, 0) == 1.5);
  CHECK(cfg.ensemble_rule(1)->size() == 4);
  CHECK(config_error(R"({"model": {"general": {"lower": [0], "upper": [1],
      "M": {"constant": [[1]], "terms": [{"parameter": 3, "matrix": [[1]]}]},
      "D": {"constant": [[1]]}, "K": {"constant": [[1]]}, "B": {"constant": [[1]]},
      "F": {"constant": [[1]]}, "G": {"constant": [[1]]}}}})")
            .find("parameter: must lie in [0, 1)") != std::string::npos);
}

TEST_CASE("commands write their outputs", "[cli]")
{
  CommandContext ctx;
  ctx.config = parse_config(small_config);
  ctx.config.output_dir = scratch_dir("outputs");
  for (auto name : command_names())
  {
    run_command(name, ctx);
  }
  const fs::path &out = ctx.config.output_dir;
  for (const char *file :
       {"assemble_summary.json", "M.csv", "galerkin_qoi.csv", "galerkin_hamiltonian.csv",
        "deterministic_hamiltonian.csv", "ensemble_hamiltonian.csv", "simulate_summary.json",
        "h2_sweep.csv", "bode_fom.csv", "bode_rom_r4.csv", "rom_hamiltonian_r4.csv",
        "fom_hamiltonian.csv", "mor_structure.json", "mor_summary.json", "bode_mean.csv",
        "ph_validation.json"})
  {
    INFO(file);
    CHECK(fs::exists(out / file));
  }
  CHECK(read_file(out / "M.csv").rfind("# ns=12 n=4 s=3\n", 0) == 0);
  CHECK(read_file(out / "galerkin_qoi.csv").rfind("t,mean,std,hamiltonian\n0,0,0,0\n", 0) == 0);
  CHECK(read_file(out / "h2_sweep.csv").rfind("r,rel_h2_error\n2,", 0) == 0);
  const auto summary = nlohmann::json::parse(read_file(out / "simulate_summary.json"));
  CHECK(summary["dissipation_audit"]["random_pairs_passed"] == 100);
  CHECK(summary["ensemble_nodes"] == 9);
  const auto ph = nlohmann::json::parse(read_file(out / "ph_validation.json"));
  CHECK(ph["galerkin"]["passed"] == true);
  CHECK(ph["reduced"]["passed"] == true);
  const auto assemble_json = nlohmann::json::parse(read_file(out / "assemble_summary.json"));
  CHECK(assemble_json["ns"] == 12);
  fs::remove_all(out);
}

TEST_CASE("repeated runs produce identical bytes", "[cli]")
{
  CommandContext a, b;
  a.config = parse_config(small_config);
  b.config = a.config;
  a.config.output_dir = scratch_dir("repeat_a");
  b.config.output_dir = scratch_dir("repeat_b");
  run_command("simulate", a);
  run_command("simulate", b);
  for (const char *file : {"galerkin_qoi.csv", "ensemble_hamiltonian.csv", "simulate_summary.json"})
  {
    CHECK(read_file(a.config.output_dir / file) == read_file(b.config.output_dir / file));
  }
  fs::remove_all(a.config.output_dir);
  fs::remove_all(b.config.output_dir);
}

TEST_CASE("Lyapunov budget and exit codes", "[cli]")
{
  CommandContext ctx;
  ctx.config = parse_config(small_config);
  ctx.config.freq.max_lyapunov_dimension = 10;
  ctx.config.output_dir = scratch_dir("budget");
  CHECK_THROWS_AS(cmd_h2sweep(ctx), SolverError);
  CHECK_THROWS_AS(run_command("nope", ctx), ConfigError);
  const auto code = [](auto thrower) {
    try
    {
      thrower();
    }
    catch (...)
    {
      return exit_code_for_current_exception();
    }
    return -1;
  };
  CHECK(code([] { throw ConfigError("x"); }) == exit_config);
  CHECK(code([] { throw CertificationError("x"); }) == exit_certification);
  CHECK(code([] { throw SolverError("x"); }) == exit_solver);
  CHECK(code([] { throw std::runtime_error("x"); }) == exit_other);
  fs::remove_all(ctx.config.output_dir);
}
