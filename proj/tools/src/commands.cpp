#include "tritronquee_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace tritronquee::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class IoFailure : public Error {
 public:
  using Error::Error;
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoFailure("error while writing " + path.string());
}

bool wants(const RunConfig& cfg, const char* format) {
  return std::find(cfg.output.formats.begin(), cfg.output.formats.end(), format) != cfg.output.formats.end();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_solution_csv(const SolveResult& result, const RunConfig& cfg, const fs::path& dir) {
  const fs::path path = dir / "solution.csv";
  auto out = open_out(path);
  out << "x,re_omega,im_omega,re_domega_dx,im_domega_dx\n";
  const int m = cfg.output.samples;
  for (int i = 0; i < m; ++i) {
    const double x = (i == m - 1) ? cfg.output.x_max
                                  : cfg.output.x_min + (cfg.output.x_max - cfg.output.x_min) * i / (m - 1);
    const auto p = result.evaluate(x);
    out << x << ',' << p.omega.real() << ',' << p.omega.imag() << ',' << p.domega_dx.real() << ','
        << p.domega_dx.imag() << '\n';
  }
  close_checked(out, path);
}

void write_coeff_csvs(const SolveReport& report, const fs::path& dir) {
  for (std::size_t d = 0; d < report.coeff_spectra.size(); ++d) {
    const fs::path path = dir / ("coeffs_" + report.domain_names[d] + ".csv");
    auto out = open_out(path);
    out << "n,abs_c\n";
    const auto& c = report.coeff_spectra[d].coeffs;
    for (std::size_t n = 0; n < c.size(); ++n) out << n << ',' << std::abs(c[n]) << '\n';
    close_checked(out, path);
  }
}

json report_json(const SolveReport& report, const RunConfig& cfg) {
  json spectra = json::object();
  json diagnostics = json::object();
  for (std::size_t d = 0; d < report.coeff_spectra.size(); ++d) {
    json abs_c = json::array(), re = json::array(), im = json::array();
    for (const auto& c : report.coeff_spectra[d].coeffs) {
      abs_c.push_back(std::abs(c));
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    spectra[report.domain_names[d]] = {{"abs", abs_c}, {"re", re}, {"im", im}};
    const auto diag = decay_diagnostic(report.coeff_spectra[d]);
    diagnostics[report.domain_names[d]] = {{"saturation_index", diag.saturation_index}, {"floor", diag.floor}};
  }
  return json{
      {"schema_version", kSchemaVersion},
      {"generated_at", utc_timestamp()},
      {"converged", report.converged},
      {"iterations", report.iterations},
      {"halvings", report.halvings},
      {"residual_history", report.residual_history},
      {"final_residual", report.final_residual},
      {"junction_x", report.junction_x},
      {"junction_value_mismatch", report.junction_value_mismatch},
      {"junction_deriv_mismatch", report.junction_deriv_mismatch},
      {"coeff_spectra", spectra},
      {"coeff_diagnostics", diagnostics},
      {"jacobian_condition", report.jacobian_condition},
      {"refined_ode_residual", report.refined_ode_residual},
      {"config", to_json(cfg)},
  };
}

void write_json(const json& doc, const fs::path& path) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  close_checked(out, path);
}

struct Outcome {
  int code = kOk;
  SolveReport report;
};

Outcome solve_into(const RunConfig& cfg, const fs::path& dir, bool quiet, std::ostream& log) {
  Outcome outcome;
  try {
    validate(cfg);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    outcome.code = kInvalidConfig;
    return outcome;
  }

  try {
    fs::create_directories(dir);
    SolveResult result;
    try {
      result = newton_solve(cfg.line, cfg.layout, cfg.solver);
    } catch (const SingularJacobian& e) {
      log << "error: " << e.what() << " (suspected pole on or near the line)\n";
      if (wants(cfg, "json")) {
        write_json({{"schema_version", kSchemaVersion},
                    {"converged", false},
                    {"error", e.what()},
                    {"iteration", e.iteration()},
                    {"config", to_json(cfg)}},
                   dir / "report.json");
      }
      outcome.code = kSingularJacobian;
      return outcome;
    }
    if (wants(cfg, "csv")) {
      write_solution_csv(result, cfg, dir);
      write_coeff_csvs(result.report, dir);
    }
    if (wants(cfg, "json")) write_json(report_json(result.report, cfg), dir / "report.json");
    outcome.report = result.report;
    outcome.code = result.report.converged ? kOk : kNoConvergence;
    if (!quiet) {
      log << (result.report.converged ? "converged" : "NOT converged") << " after " << result.report.iterations
          << " iterations, residual " << std::setprecision(3) << result.report.final_residual << ", output in "
          << dir.string() << '\n';
    }
  } catch (const IoFailure& e) {
    log << "error: " << e.what() << '\n';
    outcome.code = kIoFailure;
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    outcome.code = kIoFailure;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    outcome.code = kInvalidConfig;
  }
  return outcome;
}

}  // namespace

fs::path resolve_out_dir(const std::string& flag, const RunConfig& config) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("TRITRONQUEE_OUT"); env != nullptr && *env != '\0') return env;
  if (!config.output.directory.empty()) return config.output.directory;
  return "tritronquee_out";
}

int run(const RunConfig& config, const RunOptions& options, std::ostream& log) {
  return solve_into(config, options.out_dir, options.quiet, log).code;
}

int run(const fs::path& config_path, const std::string& out_flag, bool quiet, std::ostream& log) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }
  return run(cfg, RunOptions{resolve_out_dir(out_flag, cfg), quiet}, log);
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidConfiguration("cannot parse sweep value \"" + item + "\"");
    }
    if (used != item.size()) throw InvalidConfiguration("cannot parse sweep value \"" + item + "\"");
    values.push_back(v);
  }
  return values;
}

int sweep(const RunConfig& base, const std::string& parameter, const std::vector<double>& values,
          const RunOptions& options, std::ostream& log) {
  if (values.empty()) {
    log << "error: sweep needs at least one value\n";
    return kInvalidConfig;
  }
  if (parameter != "n_middle" && parameter != "x_l" && parameter != "x_r" && parameter != "tolerance") {
    log << "error: unknown sweep parameter \"" << parameter << "\" (expected n_middle, x_l, x_r or tolerance)\n";
    return kInvalidConfig;
  }

  std::ostringstream summary;
  summary << std::setprecision(17) << "value,converged,final_residual,iterations,coeff_floor_I,coeff_floor_II,coeff_floor_III\n";
  int worst = kOk;
  for (std::size_t i = 0; i < values.size(); ++i) {
    RunConfig cfg = base;
    const double v = values[i];
    if (parameter == "n_middle") {
      if (v != std::floor(v)) {
        log << "error: n_middle values must be integers\n";
        worst = std::max(worst, static_cast<int>(kInvalidConfig));
        continue;
      }
      std::fill(cfg.layout.n_middle.begin(), cfg.layout.n_middle.end(), static_cast<int>(v));
    } else if (parameter == "x_l") {
      cfg.layout.x_l = v;
    } else if (parameter == "x_r") {
      cfg.layout.x_r = v;
    } else {
      cfg.solver.tolerance = v;
    }
    std::ostringstream name;
    name << parameter << '_' << i;
    const auto outcome = solve_into(cfg, options.out_dir / name.str(), options.quiet, log);
    worst = std::max(worst, outcome.code);

    const auto& r = outcome.report;
    double floor_i = 0.0, floor_ii = 0.0, floor_iii = 0.0;
    for (std::size_t d = 0; d < r.coeff_spectra.size(); ++d) {
      const double f = decay_diagnostic(r.coeff_spectra[d]).floor;
      if (d == 0) {
        floor_i = f;
      } else if (d + 1 == r.coeff_spectra.size()) {
        floor_iii = f;
      } else {
        floor_ii = std::max(floor_ii, f);
      }
    }
    const bool ran = !r.residual_history.empty();
    summary << v << ',' << (r.converged ? "true" : "false") << ','
            << (ran ? r.final_residual : std::nan("")) << ',' << r.iterations << ',' << floor_i << ',' << floor_ii
            << ',' << floor_iii << '\n';
  }

  try {
    fs::create_directories(options.out_dir);
    const fs::path path = options.out_dir / "sweep_summary.csv";
    auto out = open_out(path);
    out << summary.str();
    close_checked(out, path);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kIoFailure;
  }
  return worst;
}

}  // namespace tritronquee::cli
