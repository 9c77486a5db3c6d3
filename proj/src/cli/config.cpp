// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#include "sgph/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <fmt/format.h>
#include <json.hpp>
#include "sgph/errors.hpp"

namespace sgph::cli
{

namespace
{

using json = nlohmann::json;

// Reads the members of one JSON object and rejects the ones never asked for.
class Reader
{
public:
  Reader(const json &j, std::string path) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object())
    {
      throw ConfigError(fmt::format("{}: expected an object", name()));
    }
  }

  ~Reader() noexcept(false)
  {
    if (std::uncaught_exceptions() > 0)
    {
      return;
    }
    for (const auto &[key, value] : j_.items())
    {
      if (!seen_.count(key))
      {
        throw ConfigError(fmt::format("{}: unknown key '{}'", name(), key));
      }
    }
  }

  bool has(const std::string &key)
  {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json &at(const std::string &key)
  {
    seen_.insert(key);
    return j_.at(key);
  }

  std::string child(const std::string &key) const
  {
    return path_.empty() ? key : path_ + "." + key;
  }

  template <typename T>
  void get(const std::string &key, T &out)
  {
    if (!has(key))
    {
      return;
    }
    try
    {
      out = j_.at(key).get<T>();
    }
    catch (const json::exception &)
    {
      throw ConfigError(fmt::format("{}: wrong type", child(key)));
    }
    if constexpr (std::is_floating_point_v<T>)
    {
      if (!std::isfinite(out))
      {
        throw ConfigError(fmt::format("{}: not a finite number", child(key)));
      }
    }
  }

private:
  std::string name() const { return path_.empty() ? "config" : path_; }

  const json &j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string &what)
{
  if (!ok)
  {
    throw ConfigError(what);
  }
}

Eigen::MatrixXd parse_matrix(const json &j, const std::string &path)
{
  require(j.is_array() && !j.empty(), fmt::format("{}: expected a nonempty array of rows", path));
  const auto rows = static_cast<Eigen::Index>(j.size());
  require(j[0].is_array() && !j[0].empty(), fmt::format("{}: expected rows", path));
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd A(rows, cols);
  for (Eigen::Index i = 0; i < rows; i++)
  {
    const auto &row = j[i];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols,
            fmt::format("{}: row {} has the wrong length", path, i));
    for (Eigen::Index k = 0; k < cols; k++)
    {
      require(row[k].is_number(), fmt::format("{}[{}][{}]: not a number", path, i, k));
      A(i, k) = row[k].get<double>();
      require(std::isfinite(A(i, k)), fmt::format("{}[{}][{}]: not finite", path, i, k));
    }
  }
  return A;
}

AffineMatrixFamily parse_family(const json &j, const std::string &path, int q)
{
  Reader r(j, path);
  require(r.has("constant"), fmt::format("{}: missing 'constant'", path));
  Eigen::MatrixXd constant = parse_matrix(r.at("constant"), r.child("constant"));
  std::vector<AffineMatrixFamily::Term> terms;
  if (r.has("terms"))
  {
    const json &list = r.at("terms");
    require(list.is_array(), fmt::format("{}: expected an array", r.child("terms")));
    for (std::size_t t = 0; t < list.size(); t++)
    {
      const std::string tp = fmt::format("{}[{}]", r.child("terms"), t);
      Reader tr(list[t], tp);
      int parameter = -1;
      tr.get("parameter", parameter);
      require(parameter >= 0 && parameter < q,
              fmt::format("{}.parameter: must lie in [0, {})", tp, q));
      require(tr.has("matrix"), fmt::format("{}: missing 'matrix'", tp));
      Eigen::MatrixXd m = parse_matrix(tr.at("matrix"), tp + ".matrix");
      require(m.rows() == constant.rows() && m.cols() == constant.cols(),
              fmt::format("{}.matrix: shape differs from the constant part", tp));
      terms.push_back({parameter, std::move(m)});
    }
  }
  return AffineMatrixFamily(std::move(constant), std::move(terms));
}

}  // namespace

RunConfig parse_config(const std::string &json_text)
{
  json root;
  try
  {
    root = json::parse(json_text);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }

  RunConfig cfg;
  Reader top(root, "");

  require(top.has("model"), "config: missing 'model'");
  {
    Reader model(top.at("model"), "model");
    const bool has_msd = model.has("msd");
    const bool has_general = model.has("general");
    require(has_msd != has_general, "model: give exactly one of 'msd' and 'general'");
    if (has_msd)
    {
      RunConfig::Msd msd;
      Reader m(model.at("msd"), "model.msd");
      m.get("means", msd.means);
      m.get("halfwidth", msd.halfwidth);
      m.get("random_parameters", msd.random_parameters);
      require(msd.means.size() == static_cast<std::size_t>(msd_parameter_count),
              fmt::format("model.msd.means: expected {} values", msd_parameter_count));
      for (int k = 0; k < msd_parameter_count; k++)
      {
        require(msd.means[k] > 0.0,
                fmt::format("model.msd.means: parameter {} must be positive (got {})",
                            msd_parameter_names[k], msd.means[k]));
      }
      require(msd.halfwidth > 0.0 && msd.halfwidth < 1.0,
              "model.msd.halfwidth: must lie in (0, 1)");
      std::set<std::string> unique;
      for (const auto &name : msd.random_parameters)
      {
        require(std::find(msd_parameter_names.begin(), msd_parameter_names.end(), name) !=
                    msd_parameter_names.end(),
                fmt::format("model.msd.random_parameters: unknown parameter '{}'", name));
        require(unique.insert(name).second,
                fmt::format("model.msd.random_parameters: '{}' listed twice", name));
      }
      cfg.msd = std::move(msd);
    }
    else
    {
      RunConfig::General g;
      Reader gr(model.at("general"), "model.general");
      gr.get("lower", g.lower);
      gr.get("upper", g.upper);
      require(!g.lower.empty() && g.lower.size() == g.upper.size(),
              "model.general: 'lower' and 'upper' must be nonempty and of equal length");
      const int q = static_cast<int>(g.lower.size());
      for (const char *key : {"M", "D", "K", "B", "F", "G"})
      {
        require(gr.has(key), fmt::format("model.general: missing '{}'", key));
      }
      g.M = parse_family(gr.at("M"), "model.general.M", q);
      g.D = parse_family(gr.at("D"), "model.general.D", q);
      g.K = parse_family(gr.at("K"), "model.general.K", q);
      g.B = parse_family(gr.at("B"), "model.general.B", q);
      g.F = parse_family(gr.at("F"), "model.general.F", q);
      g.G = parse_family(gr.at("G"), "model.general.G", q);
      cfg.general = std::move(g);
    }
  }

  if (top.has("basis"))
  {
    Reader b(top.at("basis"), "basis");
    b.get("degree", cfg.degree);
  }
  require(cfg.degree >= 0 && cfg.degree <= 12, "basis.degree: must lie in [0, 12]");

  if (top.has("simulation"))
  {
    auto &s = cfg.simulation;
    Reader r(top.at("simulation"), "simulation");
    r.get("t_end", s.t_end);
    r.get("rel_tol", s.rel_tol);
    r.get("abs_tol", s.abs_tol);
    if (r.has("signal"))
    {
      const json &sig = r.at("signal");
      if (sig.is_string())
      {
        s.signal = sig.get<std::string>();
        require(s.signal == "chirp" || s.signal == "zero",
                "simulation.signal: expected 'chirp', 'zero' or a table object");
      }
      else
      {
        Reader t(sig, "simulation.signal");
        t.get("t", s.table_t);
        t.get("u", s.table_u);
        s.signal = "table";
        require(!s.table_t.empty() && s.table_t.size() == s.table_u.size(),
                "simulation.signal: 't' and 'u' must be nonempty and of equal length");
        for (std::size_t i = 1; i < s.table_t.size(); i++)
        {
          require(s.table_t[i] > s.table_t[i - 1], "simulation.signal.t: must increase");
        }
      }
    }
    r.get("output_points", s.output_points);
    r.get("ensemble", s.ensemble);
    require(s.t_end > 0.0, "simulation.t_end: must be positive");
    require(s.rel_tol > 0.0 && s.abs_tol > 0.0, "simulation: tolerances must be positive");
    require(s.output_points >= 2, "simulation.output_points: need at least 2");
    if (s.ensemble != "stroud5" && s.ensemble != "none")
    {
      require(s.ensemble.rfind("gauss:", 0) == 0,
              "simulation.ensemble: expected 'stroud5', 'gauss:<m>' or 'none'");
      int m = 0;
      try
      {
        m = std::stoi(s.ensemble.substr(6));
      }
      catch (const std::exception &)
      {
        m = 0;
      }
      require(m >= 1 && m <= 64, "simulation.ensemble: gauss:<m> needs 1 <= m <= 64");
    }
  }

  if (top.has("mor"))
  {
    auto &m = cfg.mor;
    Reader r(top.at("mor"), "mor");
    r.get("r_max", m.r_max);
    r.get("r_list", m.r_list);
    r.get("hamiltonian_r", m.hamiltonian_r);
    r.get("bode_r", m.bode_r);
    require(m.r_max >= 1, "mor.r_max: must be positive");
    for (int v : m.r_list)
    {
      require(v >= 1 && v <= m.r_max, "mor.r_list: entries must lie in [1, r_max]");
    }
    for (int v : m.hamiltonian_r)
    {
      require(v >= 1 && v <= m.r_max, "mor.hamiltonian_r: entries must lie in [1, r_max]");
    }
    require(m.bode_r >= 1 && m.bode_r <= m.r_max, "mor.bode_r: must lie in [1, r_max]");
  }

  if (top.has("freq"))
  {
    auto &f = cfg.freq;
    Reader r(top.at("freq"), "freq");
    r.get("omega_min", f.omega_min);
    r.get("omega_max", f.omega_max);
    r.get("points", f.points);
    r.get("max_lyapunov_dimension", f.max_lyapunov_dimension);
    require(f.omega_min > 0.0 && f.omega_max > f.omega_min,
            "freq: need 0 < omega_min < omega_max");
    require(f.points >= 2, "freq.points: need at least 2");
  }

  std::string out;
  top.get("output_dir", out);
  if (!out.empty())
  {
    cfg.output_dir = out;
  }
  top.get("seed", cfg.seed);
  top.get("export_matrices", cfg.export_matrices);
  return cfg;
}

RunConfig load_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::shared_ptr<const ParametricSecondOrderSystem> RunConfig::build_system() const
{
  if (general)
  {
    return std::make_shared<ParametricSecondOrderSystem>(
        ParameterDomain(general->lower, general->upper), general->M, general->D, general->K,
        general->B, general->F, general->G);
  }
  const Msd m = msd ? *msd : Msd{};
  if (m.random_parameters.empty())
  {
    return std::make_shared<ParametricSecondOrderSystem>(
        build_msd(randomize_domain(m.means, m.halfwidth)));
  }
  std::vector<int> random;
  std::vector<double> centers;
  for (const auto &name : m.random_parameters)
  {
    const auto it = std::find(msd_parameter_names.begin(), msd_parameter_names.end(), name);
    const int k = static_cast<int>(it - msd_parameter_names.begin());
    random.push_back(k);
    centers.push_back(m.means[k]);
  }
  return std::make_shared<ParametricSecondOrderSystem>(
      build_msd(m.means, random, randomize_domain(centers, m.halfwidth)));
}

InputSignal RunConfig::signal(Eigen::Index inputs) const
{
  if (simulation.signal == "zero")
  {
    return InputSignal::make_zero(inputs);
  }
  if (simulation.signal == "table")
  {
    return InputSignal::make_table(simulation.table_t, simulation.table_u, inputs);
  }
  return InputSignal::make_chirp(inputs);
}

Rk45Options RunConfig::integrator() const
{
  Rk45Options o;
  o.rel_tol = simulation.rel_tol;
  o.abs_tol = simulation.abs_tol;
  return o;
}

std::optional<QuadratureRule> RunConfig::ensemble_rule(int q) const
{
  if (simulation.ensemble == "none")
  {
    return std::nullopt;
  }
  if (simulation.ensemble == "stroud5")
  {
    return stroud5(q);
  }
  return gauss_tensor(q, std::stoi(simulation.ensemble.substr(6)));
}

std::vector<int> RunConfig::sweep() const
{
  if (!mor.r_list.empty())
  {
    return mor.r_list;
  }
  std::vector<int> rs;
  for (int r = 5; r <= std::min(50, mor.r_max); r++)
  {
    rs.push_back(r);
  }
  return rs;
}

}  // namespace sgph::cli
