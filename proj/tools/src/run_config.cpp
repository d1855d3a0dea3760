#include "tritronquee_cli/run_config.hpp"

#include <cmath>
#include <fstream>

namespace tritronquee::cli {

using nlohmann::json;

namespace {

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  return obj.at(key).get<T>();
}

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  if (!doc.contains(key)) return empty;
  const json& s = doc.at(key);
  if (!s.is_object()) throw InvalidConfiguration(std::string("\"") + key + "\" must be an object");
  return s;
}

Sign parse_sigma(int raw) {
  if (raw == 1) return Sign::plus;
  if (raw == -1) return Sign::minus;
  throw InvalidConfiguration("sigma must be +1 or -1");
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) throw InvalidConfiguration("configuration must be a JSON object");
  RunConfig cfg;
  try {
    if (doc.contains("schema_version") && doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw InvalidConfiguration("unsupported schema_version");
    }

    const json& line = section(doc, "line");
    cfg.line.a = {get_or(line, "a_re", cfg.line.a.real()), get_or(line, "a_im", cfg.line.a.imag())};
    cfg.line.b = {get_or(line, "b_re", cfg.line.b.real()), get_or(line, "b_im", cfg.line.b.imag())};
    cfg.line.sigma = parse_sigma(get_or(line, "sigma", static_cast<int>(cfg.line.sigma)));
    cfg.line.allow_outside_sector = get_or(line, "allow_outside_sector", false);

    const json& layout = section(doc, "layout");
    cfg.layout.x_l = get_or(layout, "x_l", cfg.layout.x_l);
    cfg.layout.x_r = get_or(layout, "x_r", cfg.layout.x_r);
    cfg.layout.n_end_left = get_or(layout, "n_end_left", cfg.layout.n_end_left);
    cfg.layout.n_end_right = get_or(layout, "n_end_right", cfg.layout.n_end_right);
    if (layout.contains("n_middle")) {
      const json& nm = layout.at("n_middle");
      cfg.layout.n_middle = nm.is_array() ? nm.get<std::vector<int>>() : std::vector<int>{nm.get<int>()};
    }
    cfg.layout.middle_splits = get_or(layout, "middle_splits", cfg.layout.middle_splits);

    const json& solver = section(doc, "solver");
    cfg.solver.tolerance = get_or(solver, "tolerance", cfg.solver.tolerance);
    cfg.solver.max_iterations = get_or(solver, "max_iterations", cfg.solver.max_iterations);
    cfg.solver.damping = get_or(solver, "damping", cfg.solver.damping);
    cfg.solver.max_halvings = get_or(solver, "max_halvings", cfg.solver.max_halvings);
    cfg.solver.series_terms = get_or(solver, "series_terms", cfg.solver.series_terms);

    const json& output = section(doc, "output");
    cfg.output.samples = get_or(output, "samples", cfg.output.samples);
    cfg.output.x_min = get_or(output, "x_min", cfg.output.x_min);
    cfg.output.x_max = get_or(output, "x_max", cfg.output.x_max);
    cfg.output.directory = get_or(output, "directory", cfg.output.directory);
    cfg.output.formats = get_or(output, "formats", cfg.output.formats);
  } catch (const json::exception& e) {
    throw InvalidConfiguration(std::string("malformed configuration: ") + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfiguration("cannot read configuration file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidConfiguration("configuration is not valid JSON: " + std::string(e.what()));
  }
  return parse_run_config(doc);
}

json to_json(const RunConfig& cfg) {
  return json{
      {"schema_version", kSchemaVersion},
      {"line",
       {{"a_re", cfg.line.a.real()},
        {"a_im", cfg.line.a.imag()},
        {"b_re", cfg.line.b.real()},
        {"b_im", cfg.line.b.imag()},
        {"sigma", static_cast<int>(cfg.line.sigma)},
        {"allow_outside_sector", cfg.line.allow_outside_sector}}},
      {"layout",
       {{"x_l", cfg.layout.x_l},
        {"x_r", cfg.layout.x_r},
        {"n_end_left", cfg.layout.n_end_left},
        {"n_middle", cfg.layout.n_middle},
        {"n_end_right", cfg.layout.n_end_right},
        {"middle_splits", cfg.layout.middle_splits}}},
      {"solver",
       {{"tolerance", cfg.solver.tolerance},
        {"max_iterations", cfg.solver.max_iterations},
        {"damping", cfg.solver.damping},
        {"max_halvings", cfg.solver.max_halvings},
        {"series_terms", cfg.solver.series_terms}}},
      {"output",
       {{"samples", cfg.output.samples},
        {"x_min", cfg.output.x_min},
        {"x_max", cfg.output.x_max},
        {"directory", cfg.output.directory},
        {"formats", cfg.output.formats}}},
  };
}

void validate(const RunConfig& cfg) {
  check_layout(cfg.line, cfg.layout);
  check_solver_config(cfg.solver);
  if (cfg.output.samples < 2) throw InvalidConfiguration("output.samples must be >= 2");
  if (!(cfg.output.x_min < cfg.output.x_max)) throw InvalidConfiguration("output requires x_min < x_max");
  for (const auto& f : cfg.output.formats) {
    if (f != "csv" && f != "json") throw InvalidConfiguration("unknown output format \"" + f + "\"");
  }
}

}  // namespace tritronquee::cli
