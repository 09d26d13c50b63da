#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "iontrap/cli/config.hpp"

namespace iontrap::cli {

enum class Command { Scales, Equilibrium, Continuum, Sums, Adiabatic, Decohere, Scaling };

Command command_from_string(std::string_view name);
const char* to_string(Command c);

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

/// Writes the command's CSV to `out`. Diagnostics (regime warnings) go to `log`.
/// Throws the library's exceptions on failure.
void emit(Command command, const RunConfig& config, std::ostream& out, std::ostream& log);

/// Runs the command, writing to `out_path` or to `out` when no path is given.
/// Maps failures to exit codes: 1 validation, 2 numerical, 3 I/O.
int run(Command command, const RunConfig& config, const std::optional<std::string>& out_path,
        std::ostream& out, std::ostream& err);

/// Full command-line entry point: `<tool> <command> --config <path> [--out <path>] [overrides]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace iontrap::cli
