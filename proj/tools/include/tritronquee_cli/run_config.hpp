#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tritronquee/bvp_solver.hpp"

namespace tritronquee::cli {

inline constexpr int kSchemaVersion = 1;

struct OutputConfig {
  int samples = 301;
  double x_min = -15.0;
  double x_max = 15.0;
  std::string directory;
  std::vector<std::string> formats{"csv", "json"};
};

/// One solve: line, layout, Newton settings and output sampling. Missing
/// fields default to the imaginary-axis configuration.
struct RunConfig {
  LineSpec line;
  DomainLayout layout;
  SolverConfig solver;
  OutputConfig output;
};

/// Throws InvalidConfiguration on schema or invariant violations.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

/// Full invariant check (line sector, layout, solver, output).
void validate(const RunConfig& config);

}  // namespace tritronquee::cli
