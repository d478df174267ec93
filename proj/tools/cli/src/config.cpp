#include "plateopt/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string_view>

#include "plateopt/expression.hpp"
#include "plateopt/io.hpp"

namespace plateopt::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::string parse_expression(std::string_view text) {
  (void)Expression::parse(text);
  return std::string(text);
}

std::string parse_initial(std::string_view text) {
  if (text == "two_holes" || text == "disk") return std::string(text);
  return parse_expression(text);
}

std::string parse_optional_expression(std::string_view text) {
  return text == "none" ? std::string() : parse_expression(text);
}

using Setter = std::function<void(RunManifest&, std::string_view)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"mesh", {{"n", [](RunManifest& m, std::string_view v) { m.mesh_n = parse_int(v); }}}},
      {"problem",
       {
           {"load", [](RunManifest& m, std::string_view v) { m.problem.load = parse_expression(v); }},
           {"target", [](RunManifest& m, std::string_view v) { m.problem.target = parse_expression(v); }},
           {"initial", [](RunManifest& m, std::string_view v) { m.problem.initial = parse_initial(v); }},
           {"region", [](RunManifest& m, std::string_view v) { m.problem.region = parse_optional_expression(v); }},
           {"constraint",
            [](RunManifest& m, std::string_view v) { m.problem.constraint = parse_optional_expression(v); }},
           {"cost", [](RunManifest& m, std::string_view v) { m.problem.cost = cost_kind_from_name(v); }},
       }},
      {"optimizer",
       {
           {"epsilon", [](RunManifest& m, std::string_view v) { m.optimizer.epsilon = parse_double(v); }},
           {"profile", [](RunManifest& m, std::string_view v) { m.optimizer.profile = heaviside_kind_from_name(v); }},
           {"direction",
            [](RunManifest& m, std::string_view v) { m.optimizer.direction = descent_variant_from_name(v); }},
           {"initial_step",
            [](RunManifest& m, std::string_view v) { m.optimizer.line_search.initial_step = parse_double(v); }},
           {"shrink", [](RunManifest& m, std::string_view v) { m.optimizer.line_search.shrink = parse_double(v); }},
           {"expand", [](RunManifest& m, std::string_view v) { m.optimizer.line_search.expand = parse_double(v); }},
           {"max_trials",
            [](RunManifest& m, std::string_view v) { m.optimizer.line_search.max_trials = parse_int(v); }},
           {"min_decrease",
            [](RunManifest& m, std::string_view v) { m.optimizer.line_search.min_decrease = parse_double(v); }},
           {"stop", [](RunManifest& m, std::string_view v) { m.optimizer.stop.kind = stop_kind_from_name(v); }},
           {"tol", [](RunManifest& m, std::string_view v) { m.optimizer.stop.tol = parse_double(v); }},
           {"max_iters", [](RunManifest& m, std::string_view v) { m.optimizer.stop.max_iters = parse_int(v); }},
           {"solver",
            [](RunManifest& m, std::string_view v) { m.optimizer.solver.backend = solver_backend_from_name(v); }},
           {"solver_tol",
            [](RunManifest& m, std::string_view v) { m.optimizer.solver.relative_tolerance = parse_double(v); }},
           {"solver_max_iterations",
            [](RunManifest& m, std::string_view v) { m.optimizer.solver.max_iterations = parse_int(v); }},
       }},
  };
  return table;
}

const std::set<std::string, std::less<>> kPassiveSections = {"run", "artifacts", "result"};

}  // namespace

ConfigError::ConfigError(std::string origin, int line, const std::string& message)
    : std::runtime_error(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      line_(line) {}

RunManifest parse_config(std::istream& in, const std::string& origin) {
  RunManifest manifest;
  manifest.source = origin;
  std::string section;
  std::set<std::string> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(origin, line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(section) && !kPassiveSections.contains(section)) {
        throw ConfigError(origin, line_no, "unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(origin, line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin, line_no, "missing key before '='");
    if (section.empty()) throw ConfigError(origin, line_no, "key '" + key + "' outside any section");
    if (kPassiveSections.contains(section)) continue;

    const auto& keys = schema().at(section);
    const auto setter = keys.find(key);
    if (setter == keys.end()) throw ConfigError(origin, line_no, "unknown key '" + key + "' in [" + section + "]");
    if (!seen.insert(section + "." + key).second) {
      throw ConfigError(origin, line_no, "duplicate key '" + key + "' in [" + section + "]");
    }
    if (value.empty()) throw ConfigError(origin, line_no, "empty value for '" + key + "'");
    try {
      setter->second(manifest, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(origin, line_no, key + ": " + e.what());
    }
  }

  if (manifest.mesh_n < 2) throw ConfigError(origin, 0, "mesh n must be at least 2");
  if (manifest.problem.cost == CostKind::tracking_E && manifest.problem.region.empty()) {
    throw ConfigError(origin, 0, "cost tracking_E needs a region");
  }
  try {
    manifest.optimizer.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin, 0, e.what());
  }
  return manifest;
}

RunManifest load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  return parse_config(in, path);
}

std::string format_double(double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

void write_manifest(std::ostream& out, const RunManifest& m, const RunOutcome* outcome,
                    const std::vector<ArtifactChecksum>& artifacts) {
  const auto& o = m.optimizer;
  auto text_or_none = [](const std::string& s) { return s.empty() ? std::string("none") : s; };
  out << "[run]\n"
      << "source = " << m.source << "\n\n"
      << "[mesh]\n"
      << "n = " << m.mesh_n << "\n\n"
      << "[problem]\n"
      << "load = " << m.problem.load << '\n'
      << "target = " << m.problem.target << '\n'
      << "initial = " << m.problem.initial << '\n'
      << "region = " << text_or_none(m.problem.region) << '\n'
      << "constraint = " << text_or_none(m.problem.constraint) << '\n'
      << "cost = " << to_string(m.problem.cost) << "\n\n"
      << "[optimizer]\n"
      << "epsilon = " << format_double(o.epsilon) << '\n'
      << "profile = " << to_string(o.profile) << '\n'
      << "direction = " << to_string(o.direction) << '\n'
      << "initial_step = " << format_double(o.line_search.initial_step) << '\n'
      << "shrink = " << format_double(o.line_search.shrink) << '\n'
      << "expand = " << format_double(o.line_search.expand) << '\n'
      << "max_trials = " << o.line_search.max_trials << '\n'
      << "min_decrease = " << format_double(o.line_search.min_decrease) << '\n'
      << "stop = " << to_string(o.stop.kind) << '\n'
      << "tol = " << format_double(o.stop.tol) << '\n'
      << "max_iters = " << o.stop.max_iters << '\n'
      << "solver = " << to_string(o.solver.backend) << '\n'
      << "solver_tol = " << format_double(o.solver.relative_tolerance) << '\n'
      << "solver_max_iterations = " << o.solver.max_iterations << '\n';
  if (outcome) {
    out << "\n[result]\n"
        << "stop_reason = " << to_string(outcome->stop_reason) << '\n'
        << "iterations = " << outcome->iterations << '\n'
        << "final_cost = " << format_double(outcome->final_cost) << '\n';
  }
  if (!artifacts.empty()) {
    out << "\n[artifacts]\n";
    for (const auto& a : artifacts) {
      out << a.path << " = fnv1a64:" << hex64(a.checksum) << '\n';
    }
  }
}

}  // namespace plateopt::cli
