#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fadingqkd/cli/sweep.hpp"

namespace fqkd::cli {

enum ExitCode : int { kOk = 0, kInvalidArguments = 1, kNumericalFailure = 2, kPartialSweep = 3 };

struct AppContext {
  std::filesystem::path preset_dir;
  std::ostream& out;
  std::ostream& err;
};

/// Sweep configuration from a config file, using the same keys as the
/// `sweep` command line.
SweepConfig load_sweep_config(const std::filesystem::path& file);

/// Runs the command line `args` (without the program name).
int run_app(const std::vector<std::string>& args, const AppContext& ctx);

}  // namespace fqkd::cli
