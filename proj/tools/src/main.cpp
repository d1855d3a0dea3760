#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tritronquee_cli/commands.hpp"

#ifndef TRITRONQUEE_VERSION
#define TRITRONQUEE_VERSION "unknown"
#endif

int main(int argc, char** argv) {
  using namespace tritronquee::cli;

  CLI::App app{"Tritronquee solution of Painleve I on straight lines in the complex plane"};
  app.set_version_flag("--version", std::string(TRITRONQUEE_VERSION));
  app.require_subcommand(1);

  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "Suppress the summary line");

  std::string solve_config, solve_out;
  auto* solve = app.add_subcommand("solve", "Solve one configuration");
  solve->add_option("config", solve_config, "JSON configuration file")->required();
  solve->add_option("--out", solve_out, "Output directory (default: $TRITRONQUEE_OUT)");

  std::string sweep_config, sweep_out, sweep_param, sweep_values;
  auto* sw = app.add_subcommand("sweep", "Solve once per parameter value");
  sw->add_option("config", sweep_config, "Base JSON configuration file")->required();
  sw->add_option("--param", sweep_param, "n_middle, x_l, x_r or tolerance")->required();
  sw->add_option("--values", sweep_values, "Comma-separated values")->required();
  sw->add_option("--out", sweep_out, "Output directory (default: $TRITRONQUEE_OUT)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidConfig;
  }

  if (solve->parsed()) return run(solve_config, solve_out, quiet, std::cout);

  RunConfig base;
  std::vector<double> values;
  try {
    base = load_run_config(sweep_config);
    values = parse_value_list(sweep_values);
  } catch (const tritronquee::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }
  return sweep(base, sweep_param, values, RunOptions{resolve_out_dir(sweep_out, base), quiet},
               quiet ? std::cerr : std::cout);
}
