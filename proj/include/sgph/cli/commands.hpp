// Copyright The sgph Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SGPH_CLI_COMMANDS_HPP
#define SGPH_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>
#include "sgph/cli/config.hpp"

namespace sgph::cli
{

// Progress lines go to log unless it is null.
struct CommandContext
{
  RunConfig config;
  std::ostream *log = nullptr;
};

// All commands write into config.output_dir (created if missing).
void cmd_assemble(const CommandContext &ctx);
void cmd_simulate(const CommandContext &ctx);
void cmd_mor(const CommandContext &ctx);
void cmd_bode(const CommandContext &ctx);
void cmd_h2sweep(const CommandContext &ctx);
void cmd_validate_ph(const CommandContext &ctx);

const std::vector<std::string_view> &command_names();

// Dispatch by name; throws ConfigError for an unknown command.
void run_command(std::string_view name, const CommandContext &ctx);

enum ExitCode : int
{
  exit_ok = 0,
  exit_other = 1,
  exit_config = 2,
  exit_certification = 3,
  exit_solver = 4
};

// Maps the exception currently being handled to an exit code.
int exit_code_for_current_exception();

}  // namespace sgph::cli

#endif  // SGPH_CLI_COMMANDS_HPP
