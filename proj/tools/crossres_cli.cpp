// crossres: semiclassical predictions and direct oracles for resonances at a level crossing.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "crossres/checks.hpp"
#include "crossres/compare.hpp"
#include "crossres/config.hpp"
#include "crossres/errors.hpp"
#include "crossres/fit.hpp"
#include "crossres/report.hpp"
#include "crossres/semiclassics.hpp"
#include "crossres/shooting.hpp"

using namespace crossres;

namespace {

struct Output {
  std::string path;
  std::ofstream file;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw ConfigError("cannot write '" + path + "'");
    }
    return file;
  }
};

int report_check(const std::string& name, bool pass, const std::string& detail) {
  std::cerr << (pass ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  return pass ? 0 : 1;
}

int cmd_validate(const ExperimentConfig& cfg) {
  const ValidationReport r = validate_assumptions(cfg.problem);
  for (const AssumptionCheck& c : r.checks) {
    std::cerr << to_string(c.status) << ' ' << c.id << ": " << c.diagnostic;
    if (c.where) std::cerr << " (x=" << *c.where << ")";
    std::cerr << '\n';
  }
  return r.ok() ? 0 : 1;
}

int cmd_predict(const ExperimentConfig& cfg, double h, Output& out) {
  const auto p = predict(cfg.problem, h);
  write_predictions_csv(out.stream(), p);
  std::cerr << p.size() << " predictions at h=" << h << '\n';
  return p.empty() ? 1 : 0;
}

int cmd_oracle(const ExperimentConfig& cfg, double h, const std::string& method, int N, Output& out) {
  const ProblemSpec& p = cfg.problem;
  const Window w = oracle_window(p, h);
  std::vector<OracleResonance> found;
  if (oracle_method_from_string(method) == OracleMethod::ecs) {
    if (N <= 0) N = cfg.N_for(0);
    found = ecs_resonances(p, h, N, w, ecs_box(p, build_contour(p), h));
  } else {
    std::vector<cplx> seeds;
    for (const auto& pr : predict_for_compare(p, h)) seeds.push_back(pr.predicted);
    for (const OracleResonance& r : wronskian_roots(p, h, seeds))
      if (!r.converged || w.contains(r.E)) found.push_back(r);
  }
  write_oracle_csv(out.stream(), h, found);
  const bool all = std::all_of(found.begin(), found.end(), [](const OracleResonance& r) { return r.converged; });
  std::cerr << found.size() << " " << method << " resonances at h=" << h << (all ? "" : " (some unconverged)") << '\n';
  return all && !found.empty() ? 0 : 1;
}

bool pairings_complete(const CompareResult& r, const ExperimentConfig& cfg) {
  bool ok = true;
  for (const HRun& run : r.runs)
    for (OracleMethod m : cfg.methods) {
      const auto n = std::count_if(run.rows.begin(), run.rows.end(), [&](const ComparisonRow& c) { return c.method == m; });
      ok = ok && static_cast<std::size_t>(n) == run.predictions.size();
    }
  return ok;
}

void print_notes(const CompareResult& r) {
  for (const std::string& n : r.notes) std::cerr << n << '\n';
}

int cmd_compare(const ExperimentConfig& cfg, Output& out, const std::string& plot_dir) {
  const CompareResult r = run_compare(cfg);
  write_comparison_csv(out.stream(), r.rows);
  if (!plot_dir.empty()) write_plot_data(plot_dir, r.rows);
  print_notes(r);
  return report_check("pairing", pairings_complete(r, cfg), "every prediction paired with one theta-stable resonance");
}

int cmd_sweep(const ExperimentConfig& cfg, Output& out, const std::string& plot_dir) {
  const CompareResult r = run_compare(cfg);
  write_comparison_csv(out.stream(), r.rows);
  if (!plot_dir.empty()) write_plot_data(plot_dir, r.rows);
  print_notes(r);

  int failures = report_check("pairing", pairings_complete(r, cfg), "every prediction paired with one theta-stable resonance");
  const bool degenerate = cfg.problem.coupling.degenerate();
  for (OracleMethod m : cfg.methods) {
    const ConvergenceFit fit = convergence_fit(r.rows, m);
    for (const std::string& n : fit.notes) std::cerr << to_string(m) << ": " << n << '\n';
    std::ostringstream re;
    re << "slope " << fit.re.slope << " over " << fit.re.points << " h values (need >= 1.8)";
    failures += report_check(to_string(m) + " re-slope", fit.re.valid && fit.re.slope >= 1.8, re.str());
    if (degenerate) {
      double worst = 0.0;
      for (const ComparisonRow& c : r.rows)
        if (c.method == m) worst = std::max(worst, std::abs(c.oracle.imag()));
      std::ostringstream im;
      im << "max |Im E| = " << worst << " (need < 1e-8)";
      failures += report_check(to_string(m) + " realness", worst < 1e-8, im.str());
      continue;
    }
    std::ostringstream im;
    im << "slope " << fit.im.slope << " over " << fit.im.points << " h values (need >= 2.1)";
    failures += report_check(to_string(m) + " im-slope", fit.im.valid && fit.im.slope >= 2.1, im.str());

    if (!cfg.h_values.empty()) {
      const double h_min = cfg.h_values.back();
      double c_max = 0.0;
      for (const WidthRatio& w : fit.ratios)
        if (w.h == h_min) c_max = std::max(c_max, w.C);
      double worst = 0.0;
      for (const WidthRatio& w : fit.ratios)
        if (w.h == h_min && w.C > 0.1 * c_max) worst = std::max(worst, std::abs(w.ratio / w.C - 1.0));
      std::ostringstream rs;
      rs << "max |(-Im E / h^2) / C - 1| = " << worst << " at h=" << h_min << " (need <= 0.15)";
      failures += report_check(to_string(m) + " width ratio", worst <= 0.15, rs.str());
    }
  }
  if (cfg.methods.size() == 2) {
    double worst = 0.0;
    for (const HRun& run : r.runs)
      for (const ComparisonRow& a : run.rows)
        for (const ComparisonRow& b : run.rows)
          if (a.method == OracleMethod::ecs && b.method == OracleMethod::wronskian && a.k == b.k)
            worst = std::max(worst, std::abs(a.oracle - b.oracle));
    std::ostringstream os;
    os << "max |E_ecs - E_wronskian| = " << worst << " (need < 1e-4)";
    failures += report_check("dual oracle", worst < 1e-4, os.str());
  }
  return failures == 0 ? 0 : 1;
}

int cmd_consistency(const ExperimentConfig& cfg, int draws, bool fixed_coupling) {
  ConsistencyOptions o;
  o.draws = draws;
  o.random_coupling = !fixed_coupling;
  if (!cfg.h_values.empty() && fixed_coupling) {
    o.h_lo = cfg.h_values.back();
    o.h_hi = cfg.h_values.front();
  }
  const ConsistencyScan s = consistency_scan(cfg.problem, o);
  std::ostringstream os;
  os << s.samples << " draws, max relative deviation " << s.max_relative << " (worst at E=" << s.worst_E
     << ", h=" << s.worst_h << ", r0=" << s.worst_r0 << ", r1=" << s.worst_r1 << "; need < 1e-10)";
  return report_check("consistency", s.max_relative < 1e-10, os.str());
}

int cmd_fixtures(const ExperimentConfig& cfg, Output& out) {
  out.stream() << fixtures_json(cfg.problem).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonances above a level crossing: semiclassical predictions against ECS and shooting oracles"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  std::string config_path, out_path, plot_dir, method = "ecs";
  double h = 0.0;
  int N = 0, draws = 200;
  bool fixed_coupling = false;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "write the table here instead of stdout");
  };
  auto* validate = app.add_subcommand("validate", "check the model assumptions");
  validate->add_option("config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  auto* predict_cmd = app.add_subcommand("predict", "Bohr-Sommerfeld grid and widths at one h");
  add_config(predict_cmd);
  predict_cmd->add_option("--h", h, "semiclassical parameter")->required();
  auto* oracle = app.add_subcommand("oracle", "direct resonances at one h");
  add_config(oracle);
  oracle->add_option("--h", h, "semiclassical parameter")->required();
  oracle->add_option("--method", method, "ecs or wronskian")->check(CLI::IsMember({"ecs", "wronskian"}));
  oracle->add_option("--N", N, "grid nodes per channel (ecs)");
  auto* compare = app.add_subcommand("compare", "pair predictions with oracle resonances over the h sweep");
  add_config(compare);
  compare->add_option("--plot-data", plot_dir, "directory for two-column plot data");
  auto* sweep = app.add_subcommand("sweep", "compare plus convergence fits and pass/fail checks");
  add_config(sweep);
  sweep->add_option("--plot-data", plot_dir, "directory for two-column plot data");
  auto* consistency = app.add_subcommand("consistency", "Green-formula width against C(E, h) h^2");
  consistency->add_option("config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  consistency->add_option("--draws", draws, "number of random (E, h, r0, r1) draws");
  consistency->add_flag("--fixed-coupling", fixed_coupling, "keep the config's coupling instead of drawing r0, r1");
  auto* fixtures = app.add_subcommand("fixtures", "derived constants at E0 as JSON");
  add_config(fixtures);

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg = load_config(config_path);
    Output out{out_path, {}};
    if (*validate) return cmd_validate(cfg);
    if (*predict_cmd) return cmd_predict(cfg, h, out);
    if (*oracle) return cmd_oracle(cfg, h, method, N, out);
    if (*compare) return cmd_compare(cfg, out, plot_dir);
    if (*sweep) return cmd_sweep(cfg, out, plot_dir);
    if (*consistency) return cmd_consistency(cfg, draws, fixed_coupling);
    if (*fixtures) return cmd_fixtures(cfg, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
