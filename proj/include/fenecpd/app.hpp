#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fenecpd/config.hpp"

namespace fenecpd {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSolver = 2;

struct AppOptions {
  bool allow_unverified = false;
  /// Directory against which a relative initial.values_file is resolved
  /// (the config file's directory). Output directories are relative to the
  /// working directory.
  std::string base_dir;
};

/// Executes one mode and writes its artifacts into config.output.dir.
/// Returns an exit code; messages go to log.
int execute(const SimulationConfig& config, const AppOptions& options, std::ostream& log);

/// Full CLI: <subcommand> --config <path> [--override k=v]... [--allow-unverified]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fenecpd
