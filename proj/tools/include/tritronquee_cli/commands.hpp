#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tritronquee_cli/run_config.hpp"

namespace tritronquee::cli {

enum ExitCode : int {
  kOk = 0,
  kNoConvergence = 2,
  kInvalidConfig = 3,
  kIoFailure = 4,
  kSingularJacobian = 5,
};

struct RunOptions {
  std::filesystem::path out_dir;
  bool quiet = false;
};

/// Output directory precedence: explicit flag, then TRITRONQUEE_OUT, then
/// the config file's output.directory, then "tritronquee_out".
std::filesystem::path resolve_out_dir(const std::string& flag, const RunConfig& config);

/// Solves one configuration and writes solution.csv, coeffs_<domain>.csv
/// and report.json into options.out_dir.
int run(const RunConfig& config, const RunOptions& options, std::ostream& log);
int run(const std::filesystem::path& config_path, const std::string& out_flag, bool quiet, std::ostream& log);

/// One solve per value of `parameter` (n_middle, x_l, x_r or tolerance),
/// each in its own subdirectory, plus sweep_summary.csv. Returns the worst exit code.
int sweep(const RunConfig& base, const std::string& parameter, const std::vector<double>& values,
          const RunOptions& options, std::ostream& log);

std::vector<double> parse_value_list(const std::string& text);

}  // namespace tritronquee::cli
