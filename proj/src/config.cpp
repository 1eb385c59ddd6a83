#include "crossres/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

using nlohmann::json;

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

const json& section(const json& root, const char* name) {
  static const json empty = json::object();
  if (!root.contains(name)) return empty;
  if (!root.at(name).is_object()) throw ConfigError(std::string("section '") + name + "' must be an object");
  return root.at(name);
}

}  // namespace

int ExperimentConfig::N_for(std::size_t h_index) const {
  if (N.empty()) return 8192;
  if (N.size() == 1) return N.front();
  if (h_index >= N.size()) throw ConfigError("sweep.N has fewer entries than sweep.h_values");
  return N[h_index];
}

std::vector<double> ExperimentConfig::thetas() const {
  if (!theta_values.empty()) return theta_values;
  return {problem.theta, problem.theta + 0.05};
}

AnalyticFunction parse_function(const json& j, const std::string& name) {
  if (j.is_number()) return AnalyticFunction::constant(j.get<double>(), name);
  if (!j.is_object() || !j.contains("kind")) throw ConfigError(name + ": expected a number or an object with 'kind'");
  const FunctionKind kind = function_kind_from_string(j.at("kind").get<std::string>());
  std::map<std::string, double> params;
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") continue;
    if (key == "coefficients") {
      if (!value.is_array()) throw ConfigError(name + ": 'coefficients' must be an array");
      for (std::size_t i = 0; i < value.size(); ++i) params["c" + std::to_string(i)] = value.at(i).get<double>();
      continue;
    }
    if (!value.is_number()) throw ConfigError(name + ": parameter '" + key + "' must be a number");
    params[key] = value.get<double>();
  }
  return AnalyticFunction(kind, std::move(params), name);
}

json function_to_json(const AnalyticFunction& f) {
  json j;
  j["kind"] = std::string(to_string(f.kind()));
  for (const auto& [key, value] : f.params()) j[key] = value;
  return j;
}

ExperimentConfig parse_config(const json& root) {
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  ProblemSpec& p = c.problem;

  const json& pot = section(root, "potentials");
  if (!pot.contains("V1") || !pot.contains("V2")) throw ConfigError("potentials: V1 and V2 are required");
  p.V1 = parse_function(pot.at("V1"), "V1");
  p.V2 = parse_function(pot.at("V2"), "V2");

  const json& cp = section(root, "coupling");
  if (cp.contains("r0")) p.coupling.r0 = parse_function(cp.at("r0"), "r0");
  if (cp.contains("r1")) p.coupling.r1 = parse_function(cp.at("r1"), "r1");
  if (cp.contains("degenerate")) p.coupling.allow_degenerate = cp.at("degenerate").get<bool>();

  const json& win = section(root, "window");
  p.E0 = number(win, "E0", p.E0);
  p.delta0 = number(win, "delta0", p.delta0);
  p.C0 = number(win, "C0", p.C0);

  const json& con = section(root, "contour");
  p.theta = number(con, "theta", p.theta);
  p.x_infty = number(con, "x_infty", p.x_infty);
  p.ramp_width = number(con, "ramp_width", p.ramp_width);
  if (con.contains("box")) {
    const json& b = con.at("box");
    if (!b.is_array() || b.size() != 2) throw ConfigError("contour.box must be [x_min, x_max]");
    p.box.x_min = b.at(0).get<double>();
    p.box.x_max = b.at(1).get<double>();
  }

  const json& sw = section(root, "sweep");
  if (sw.contains("h_values")) c.h_values = sw.at("h_values").get<std::vector<double>>();
  for (double h : c.h_values)
    if (!(h > 0.0)) throw ConfigError("sweep.h_values must be positive");
  if (sw.contains("N")) {
    const json& n = sw.at("N");
    c.N = n.is_array() ? n.get<std::vector<int>>() : std::vector<int>{n.get<int>()};
    if (c.N.size() > 1 && c.N.size() != c.h_values.size())
      throw ConfigError("sweep.N must be a single value or one per h");
  }
  // Sort descending, carrying per-h N along.
  if (c.N.size() > 1) {
    std::vector<std::pair<double, int>> hn;
    for (std::size_t i = 0; i < c.h_values.size(); ++i) hn.emplace_back(c.h_values[i], c.N[i]);
    std::sort(hn.begin(), hn.end(), [](auto& a, auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < hn.size(); ++i) std::tie(c.h_values[i], c.N[i]) = hn[i];
  } else {
    std::sort(c.h_values.begin(), c.h_values.end(), std::greater<>());
  }
  if (sw.contains("theta_values")) c.theta_values = sw.at("theta_values").get<std::vector<double>>();
  if (sw.contains("methods")) {
    c.methods.clear();
    for (const auto& m : sw.at("methods")) c.methods.push_back(oracle_method_from_string(m.get<std::string>()));
  }
  if (sw.contains("seeds")) {
    const std::string s = sw.at("seeds").get<std::string>();
    if (s == "predictions")
      c.seeds = SeedPolicy::predictions;
    else if (s == "predictions+ecs")
      c.seeds = SeedPolicy::predictions_and_ecs;
    else
      throw ConfigError("sweep.seeds must be 'predictions' or 'predictions+ecs'");
  }
  c.theta_tolerance = number(sw, "theta_tolerance", c.theta_tolerance);
  if (sw.contains("threads")) c.threads = sw.at("threads").get<int>();

  p.check_basic();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  try {
    return parse_config(j);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

json config_to_json(const ExperimentConfig& c) {
  const ProblemSpec& p = c.problem;
  json j;
  j["potentials"] = {{"V1", function_to_json(p.V1)}, {"V2", function_to_json(p.V2)}};
  j["coupling"] = {{"r0", function_to_json(p.coupling.r0)},
                   {"r1", function_to_json(p.coupling.r1)},
                   {"degenerate", p.coupling.allow_degenerate}};
  j["window"] = {{"E0", p.E0}, {"delta0", p.delta0}, {"C0", p.C0}};
  j["contour"] = {{"theta", p.theta},
                  {"x_infty", p.x_infty},
                  {"ramp_width", p.ramp_width},
                  {"box", {p.box.x_min, p.box.x_max}}};
  json methods = json::array();
  for (OracleMethod m : c.methods) methods.push_back(to_string(m));
  j["sweep"] = {{"h_values", c.h_values},
                {"N", c.N},
                {"theta_values", c.thetas()},
                {"methods", methods},
                {"seeds", c.seeds == SeedPolicy::predictions ? "predictions" : "predictions+ecs"},
                {"theta_tolerance", c.theta_tolerance},
                {"threads", c.threads}};
  return j;
}

}  // namespace crossres
