// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <fmt/format.h>
#include <json.hpp>
#include "sgph/csv.hpp"
#include "sgph/errors.hpp"
#include "sgph/freq.hpp"
#include "sgph/mor.hpp"
#include "sgph/phform.hpp"
#include "sgph/sgalerkin.hpp"
#include "sgph/simulate.hpp"

namespace sgph::cli
{

namespace
{

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void note(const CommandContext &ctx, const std::string &line)
{
  if (ctx.log)
  {
    *ctx.log << line << '\n';
  }
}

std::ofstream open_output(const CommandContext &ctx, const std::string &name)
{
  fs::create_directories(ctx.config.output_dir);
  const fs::path path = ctx.config.output_dir / name;
  std::ofstream os(path, std::ios::binary);
  if (!os)
  {
    throw Error(fmt::format("cannot write '{}'", path.string()));
  }
  return os;
}

void write_json(const CommandContext &ctx, const std::string &name, const json &j)
{
  auto os = open_output(ctx, name);
  os << j.dump(2) << '\n';
}

void write_series(const CommandContext &ctx, const std::string &name, const std::string &column,
                  const std::vector<double> &t, const Eigen::VectorXd &values)
{
  auto os = open_output(ctx, name);
  CsvWriter csv(os, {"t", column});
  for (std::size_t i = 0; i < t.size(); i++)
  {
    csv.row({t[i], values(static_cast<Eigen::Index>(i))});
  }
}

json certificate_json(const DefinitenessCertificate &c)
{
  json j;
  j["kind"] = std::string(to_string(c.kind));
  j["lambda_min"] = c.lambda_min;
  j["lambda_max"] = c.lambda_max;
  return j;
}

// Lazily built pieces shared by the commands.
struct Pipeline
{
  explicit Pipeline(const CommandContext &ctx) : ctx(ctx), cfg(ctx.config)
  {
    base = cfg.build_system();
    basis.emplace(base->domain(), cfg.degree);
    note(ctx, fmt::format("model: q={} n={} d={} s={} ns={}", base->domain().dimension(),
                          base->dimension(), cfg.degree, basis->size(),
                          base->dimension() * static_cast<Eigen::Index>(basis->size())));
  }

  const GalerkinSecondOrderSystem &galerkin()
  {
    if (!fom)
    {
      fom = std::make_unique<GalerkinSecondOrderSystem>(assemble(base, *basis));
    }
    return *fom;
  }

  const ProjectionBasis &projection()
  {
    if (!V)
    {
      V = std::make_unique<ProjectionBasis>(soar(galerkin(), cfg.mor.r_max));
      note(ctx, fmt::format("second-order Arnoldi: rank {} ({} deflations)", V->rank(),
                            V->deflations));
    }
    return *V;
  }

  void check_lyapunov_budget(Eigen::Index first_order_dimension) const
  {
    if (first_order_dimension > cfg.freq.max_lyapunov_dimension)
    {
      throw SolverError(fmt::format(
          "H2 computation needs a dense Lyapunov solve of dimension {}, above "
          "freq.max_lyapunov_dimension = {}",
          first_order_dimension, cfg.freq.max_lyapunov_dimension));
    }
  }

  InputSignal signal() const { return cfg.signal(base->inputs()); }

  const CommandContext &ctx;
  const RunConfig &cfg;
  std::shared_ptr<const ParametricSecondOrderSystem> base;
  std::optional<PCBasis> basis;
  std::unique_ptr<GalerkinSecondOrderSystem> fom;
  std::unique_ptr<ProjectionBasis> V;
};

std::string matrix_comment(const GalerkinSecondOrderSystem &g)
{
  return fmt::format("# ns={} n={} s={}", g.dimension(), g.n(), g.s());
}

struct SweepRow
{
  int r;
  double error;
  StructureReport structure;
};

std::vector<SweepRow> h2_sweep(Pipeline &p)
{
  const auto &g = p.galerkin();
  const auto &V = p.projection();
  const std::vector<int> rs = p.cfg.sweep();
  const int r_top = rs.empty() ? 0 : *std::max_element(rs.begin(), rs.end());
  p.check_lyapunov_budget(2 * (g.dimension() + std::min<Eigen::Index>(r_top, V.rank())));
  const StateSpace fom = first_order_realization(restrict_ports(g.system));
  std::vector<SweepRow> rows;
  for (int r : rs)
  {
    if (r > V.rank())
    {
      note(p.ctx, fmt::format("r={} skipped: basis rank is {}", r, V.rank()));
      continue;
    }
    const ReducedSecondOrderSystem rom = reduce(g, V, r);
    const double e =
        relative_h2_error(fom, first_order_realization(restrict_ports(rom.system)));
    rows.push_back({r, e, structure_report(rom)});
  }
  return rows;
}

void write_sweep(const CommandContext &ctx, const std::vector<SweepRow> &rows)
{
  auto os = open_output(ctx, "h2_sweep.csv");
  CsvWriter csv(os, {"r", "rel_h2_error"});
  for (const auto &row : rows)
  {
    csv.row({static_cast<double>(row.r), row.error});
  }
}

void write_bode(const CommandContext &ctx, const std::string &name,
                const ConstantSecondOrderSystem &sys)
{
  const auto &f = ctx.config.freq;
  const TransferEvaluator te(sys);
  auto os = open_output(ctx, name);
  write_bode_csv(os, bode_grid(te, f.omega_min, f.omega_max, f.points));
}

json audit_json(const PHSystem &ph, const Trajectory &traj, std::uint64_t seed)
{
  const DissipationAuditor auditor(ph, traj);
  const double t0 = traj.solution.t_begin(), t1 = traj.solution.t_end();
  const DissipationAudit whole = auditor.audit(t0, t1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(t0, t1);
  int passed = 0;
  double worst = 0.0;
  constexpr int pairs = 100;
  for (int k = 0; k < pairs; k++)
  {
    double a = pick(rng), b = pick(rng);
    if (a > b)
    {
      std::swap(a, b);
    }
    const DissipationAudit r = auditor.audit(a, b);
    passed += r.inequality_ok && r.balance_ok;
    if (r.tolerance > 0.0)
    {
      worst = std::max(worst, r.balance_residual / r.tolerance);
    }
  }
  json j;
  j["delta_h"] = whole.delta_h;
  j["supplied"] = whole.supplied;
  j["dissipated"] = whole.dissipated;
  j["balance_residual"] = whole.balance_residual;
  j["tolerance"] = whole.tolerance;
  j["random_pairs"] = pairs;
  j["random_pairs_passed"] = passed;
  j["worst_residual_over_tolerance"] = worst;
  return j;
}

}  // namespace

void cmd_assemble(const CommandContext &ctx)
{
  Pipeline p(ctx);
  const auto &g = p.galerkin();
  const auto &c = *g.system.certificate;
  json j;
  j["q"] = p.base->domain().dimension();
  j["d"] = ctx.config.degree;
  j["n"] = g.n();
  j["s"] = g.s();
  j["ns"] = g.dimension();
  j["inputs"] = g.system.inputs();
  j["outputs"] = g.system.outputs();
  j["M"] = certificate_json(c.mass);
  j["D"] = certificate_json(c.damping);
  j["K"] = certificate_json(c.stiffness);
  write_json(ctx, "assemble_summary.json", j);
  if (ctx.config.export_matrices)
  {
    const std::string comment = matrix_comment(g);
    const auto dir = ctx.config.output_dir;
    write_matrix_csv(dir / "M.csv", g.system.M, comment);
    write_matrix_csv(dir / "D.csv", g.system.D, comment);
    write_matrix_csv(dir / "K.csv", g.system.K, comment);
    write_matrix_csv(dir / "B.csv", g.system.B, comment);
    write_matrix_csv(dir / "F.csv", g.system.F, comment);
    write_matrix_csv(dir / "G.csv", g.system.G, comment);
  }
  note(ctx, fmt::format("assembled: s={} ns={}", g.s(), g.dimension()));
}

void cmd_simulate(const CommandContext &ctx)
{
  Pipeline p(ctx);
  const auto &cfg = ctx.config;
  const auto &sim = cfg.simulation;
  const auto &g = p.galerkin();
  const InputSignal signal = p.signal();
  const Rk45Options opts = cfg.integrator();

  const GalerkinRun run = run_galerkin(g, signal, sim.t_end, opts, sim.output_points);
  note(ctx, fmt::format("Galerkin run: {} steps, {} rejected",
                        run.trajectory.solution.stats.accepted,
                        run.trajectory.solution.stats.rejected));
  const auto &series = run.series;
  const Eigen::Index n_out = series.mean.rows();
  {
    std::vector<std::string> header = {"t"};
    for (Eigen::Index k = 0; k < n_out; k++)
    {
      header.push_back(n_out == 1 ? "mean" : fmt::format("mean_{}", k + 1));
    }
    for (Eigen::Index k = 0; k < n_out; k++)
    {
      header.push_back(n_out == 1 ? "std" : fmt::format("std_{}", k + 1));
    }
    header.emplace_back("hamiltonian");
    auto os = open_output(ctx, "galerkin_qoi.csv");
    CsvWriter csv(os, header);
    std::vector<double> row(header.size());
    for (std::size_t i = 0; i < series.t.size(); i++)
    {
      const auto c = static_cast<Eigen::Index>(i);
      row[0] = series.t[i];
      for (Eigen::Index k = 0; k < n_out; k++)
      {
        row[1 + k] = series.mean(k, c);
        row[1 + n_out + k] = series.std(k, c);
      }
      row.back() = series.hamiltonian(c);
      csv.row(row);
    }
  }
  write_series(ctx, "galerkin_hamiltonian.csv", "hamiltonian", series.t, series.hamiltonian);

  const SeriesResult det =
      run_deterministic(p.base->evaluate_center(), signal, sim.t_end, opts, sim.output_points);
  write_series(ctx, "deterministic_hamiltonian.csv", "hamiltonian", det.t, det.hamiltonian);

  json j;
  j["ns"] = g.dimension();
  j["steps"] = run.trajectory.solution.stats.accepted;
  j["rejected"] = run.trajectory.solution.stats.rejected;
  Eigen::Index peak = 0;
  const double h_max = series.hamiltonian.maxCoeff(&peak);
  j["galerkin_hamiltonian_max"] = h_max;
  j["galerkin_hamiltonian_peak_t"] = series.t[static_cast<std::size_t>(peak)];

  if (const auto rule = cfg.ensemble_rule(p.base->domain().dimension()))
  {
    note(ctx, fmt::format("ensemble: {} IVPs", rule->size()));
    const SeriesResult ens = ensemble_expected_hamiltonian(*p.base, *rule, signal, sim.t_end, opts,
                                                           sim.output_points);
    write_series(ctx, "ensemble_hamiltonian.csv", "expected_hamiltonian", ens.t, ens.hamiltonian);
    const double scale = ens.hamiltonian.cwiseAbs().maxCoeff();
    const double gap = (series.hamiltonian - ens.hamiltonian).cwiseAbs().maxCoeff();
    j["ensemble_nodes"] = rule->size();
    j["max_abs_gap_galerkin_vs_ensemble"] = gap;
    j["max_rel_gap_galerkin_vs_ensemble"] = scale > 0.0 ? gap / scale : 0.0;
    j["max_rel_gap_mean_output"] =
        ens.mean.cwiseAbs().maxCoeff() > 0.0
            ? (series.mean - ens.mean).cwiseAbs().maxCoeff() / ens.mean.cwiseAbs().maxCoeff()
            : 0.0;
  }

  const PHSystem ph = embed_second_order(g.system, PHProvenance::galerkin);
  j["dissipation_audit"] = audit_json(ph, run.trajectory, cfg.seed);
  write_json(ctx, "simulate_summary.json", j);
}

void cmd_h2sweep(const CommandContext &ctx)
{
  Pipeline p(ctx);
  const auto rows = h2_sweep(p);
  write_sweep(ctx, rows);
}

void cmd_mor(const CommandContext &ctx)
{
  Pipeline p(ctx);
  const auto &cfg = ctx.config;
  const auto &sim = cfg.simulation;
  const auto &g = p.galerkin();
  const auto &V = p.projection();

  const auto rows = h2_sweep(p);
  write_sweep(ctx, rows);
  json structure = json::array();
  bool all_ok = true;
  for (const auto &row : rows)
  {
    structure.push_back(json::parse(row.structure.to_json()));
    all_ok = all_ok && row.structure.structure_ok;
  }
  write_json(ctx, "mor_structure.json", structure);

  const ConstantSecondOrderSystem fom_siso = restrict_ports(g.system);
  write_bode(ctx, "bode_fom.csv", fom_siso);
  json j;
  j["ns"] = g.dimension();
  j["basis_rank"] = V.rank();
  j["deflations"] = V.deflations;
  j["all_structure_ok"] = all_ok;
  if (cfg.mor.bode_r <= V.rank())
  {
    const ReducedSecondOrderSystem rom = reduce(g, V, cfg.mor.bode_r);
    write_bode(ctx, fmt::format("bode_rom_r{}.csv", cfg.mor.bode_r), restrict_ports(rom.system));
  }

  const InputSignal signal = p.signal();
  const Rk45Options opts = cfg.integrator();
  const SeriesResult full = run_galerkin(g, signal, sim.t_end, opts, sim.output_points).series;
  write_series(ctx, "fom_hamiltonian.csv", "hamiltonian", full.t, full.hamiltonian);
  const double scale = full.hamiltonian.cwiseAbs().maxCoeff();
  json dev = json::object();
  for (int r : cfg.mor.hamiltonian_r)
  {
    if (r > V.rank())
    {
      continue;
    }
    const ReducedSecondOrderSystem rom = reduce(g, V, r);
    const SeriesResult red = run_deterministic(rom.system, signal.in_first_mode(g.s()), sim.t_end,
                                               opts, sim.output_points);
    write_series(ctx, fmt::format("rom_hamiltonian_r{}.csv", r), "hamiltonian", red.t,
                 red.hamiltonian);
    const double gap = (red.hamiltonian - full.hamiltonian).cwiseAbs().maxCoeff();
    dev[std::to_string(r)] = scale > 0.0 ? gap / scale : gap;
  }
  j["rom_hamiltonian_max_rel_deviation"] = dev;
  write_json(ctx, "mor_summary.json", j);
}

void cmd_bode(const CommandContext &ctx)
{
  Pipeline p(ctx);
  ConstantSecondOrderSystem mean = p.base->evaluate_center();
  write_bode(ctx, "bode_mean.csv", restrict_ports(mean));
  write_bode(ctx, "bode_fom.csv", restrict_ports(p.galerkin().system));
}

void cmd_validate_ph(const CommandContext &ctx)
{
  Pipeline p(ctx);
  json j;
  ConstantSecondOrderSystem mean = p.base->evaluate_center();
  certify(mean);
  j["deterministic"] = json::parse(validate_ph(embed_second_order(mean)).to_json());
  const auto &g = p.galerkin();
  j["galerkin"] =
      json::parse(validate_ph(embed_second_order(g.system, PHProvenance::galerkin)).to_json());
  const auto &V = p.projection();
  const Eigen::Index r = std::min<Eigen::Index>(ctx.config.mor.bode_r, V.rank());
  const ReducedSecondOrderSystem rom = reduce(g, V, r);
  json red = json::parse(validate_ph(embed_second_order(rom.system, PHProvenance::reduced)).to_json());
  red["r"] = r;
  j["reduced"] = red;
  write_json(ctx, "ph_validation.json", j);
}

const std::vector<std::string_view> &command_names()
{
  static const std::vector<std::string_view> names = {"assemble", "simulate", "mor",
                                                      "bode",     "h2sweep",  "validate-ph"};
  return names;
}

void run_command(std::string_view name, const CommandContext &ctx)
{
  if (name == "assemble")
  {
    cmd_assemble(ctx);
  }
  else if (name == "simulate")
  {
    cmd_simulate(ctx);
  }
  else if (name == "mor")
  {
    cmd_mor(ctx);
  }
  else if (name == "bode")
  {
    cmd_bode(ctx);
  }
  else if (name == "h2sweep")
  {
    cmd_h2sweep(ctx);
  }
  else if (name == "validate-ph")
  {
    cmd_validate_ph(ctx);
  }
  else
  {
    throw ConfigError(fmt::format("unknown command '{}'", name));
  }
}

int exit_code_for_current_exception()
{
  try
  {
    throw;
  }
  catch (const ConfigError &)
  {
    return exit_config;
  }
  catch (const CertificationError &)
  {
    return exit_certification;
  }
  catch (const SolverError &)
  {
    return exit_solver;
  }
  catch (...)
  {
    return exit_other;
  }
}

}  // namespace sgph::cli
