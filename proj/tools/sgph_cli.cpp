// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

// Batch front end: sgph_cli <command> --config run.json [--out dir]
// [--threads n] [--d degree] [--quiet]

#include <iostream>
#include <string>
#include <CLI11.hpp>
#include "sgph/cli/commands.hpp"
#include "sgph/errors.hpp"
#include "sgph/parallel.hpp"

int main(int argc, char **argv)
{
  using namespace sgph::cli;

  CLI::App app{"Stochastic Galerkin / port-Hamiltonian / model reduction pipeline"};
  app.require_subcommand(1, 1);
  std::string config_path, out_dir;
  int threads = 0;
  int degree = -1;
  bool quiet = false;
  for (auto name : command_names())
  {
    auto *sub = app.add_subcommand(std::string(name));
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
    sub->add_option("--threads", threads, "worker threads (default: all)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--d", degree, "total polynomial degree (overrides basis.degree)")
        ->check(CLI::Range(0, 12));
    sub->add_flag("--quiet", quiet, "suppress progress output");
  }
  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try
  {
    CommandContext ctx;
    ctx.config = load_config(config_path);
    if (!out_dir.empty())
    {
      ctx.config.output_dir = out_dir;
    }
    if (degree >= 0)
    {
      ctx.config.degree = degree;
    }
    ctx.log = quiet ? nullptr : &std::cerr;
    sgph::set_threads(threads);
    run_command(app.get_subcommands().front()->get_name(), ctx);
  }
  catch (const std::exception &e)
  {
    const int code = exit_code_for_current_exception();
    std::cerr << "error: " << e.what() << '\n';
    return code;
  }
  return exit_ok;
}
