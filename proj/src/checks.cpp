#include "crossres/checks.hpp"

#include <cmath>
#include <random>

#include "crossres/actions.hpp"
#include "crossres/microlocal.hpp"
#include "crossres/semiclassics.hpp"

namespace crossres {

ConsistencyScan consistency_scan(const ProblemSpec& problem, const ConsistencyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ConsistencyScan scan;
  for (int i = 0; i < options.draws; ++i) {
    const double E = problem.E0 - problem.delta0 + 2.0 * problem.delta0 * unit(rng);
    const double h = options.h_lo * std::pow(options.h_hi / options.h_lo, unit(rng));
    ProblemSpec p = problem;
    if (options.random_coupling) {
      double r0 = 0.0, r1 = 0.0;
      while (std::hypot(r0, r1) < 1e-3) {
        r0 = -2.0 + 4.0 * unit(rng);
        r1 = -2.0 + 4.0 * unit(rng);
      }
      p.coupling.r0 = AnalyticFunction::constant(r0, "r0");
      p.coupling.r1 = AnalyticFunction::constant(r1, "r1");
    }
    const WidthInputs w = width_inputs(p, E);
    const MicrolocalInputs m = microlocal_inputs(p, E);
    const double expected = width_coefficient(w, h) * h * h;
    const double got = width_from_green(m, h);
    const double rel = std::abs(got - expected) / (expected + 1e-30);
    ++scan.samples;
    if (rel >= scan.max_relative) {
      scan.max_relative = rel;
      scan.worst_E = E;
      scan.worst_h = h;
      scan.worst_r0 = w.r0;
      scan.worst_r1 = w.r1;
    }
  }
  return scan;
}

nlohmann::json fixtures_json(const ProblemSpec& problem) {
  const double E = problem.E0;
  const TurningPoints tp = turning_points(problem, E);
  const CrossingSlopes sl = crossing_slopes(problem);
  const ActionSet s = action_set(problem, E);
  nlohmann::json j;
  j["E0"] = E;
  j["turning_points"] = {{"a", tp.a.real()}, {"b", tp.b.real()}, {"c", tp.c.real()}};
  j["crossing_slopes"] = {{"tau1", sl.tau1}, {"tau2", sl.tau2}, {"gamma", sl.gamma}};
  j["actions"] = {{"A", s.A.real()},     {"B", s.B.real()},         {"S1L", s.S1L.real()},
                  {"S1R", s.S1R.real()}, {"S2L", s.S2L.real()},     {"dA_dE", s.dA_dE.real()},
                  {"dB_dE", s.dB_dE.real()}};
  if (!problem.coupling.degenerate()) {
    const MuConstants mu = mu_constants(problem, E);
    const TauPair tau = tau_pm(problem, E);
    j["crossing"] = {{"mu", mu.mu},
                     {"mu_hat", mu.mu_hat},
                     {"tau_plus", {tau.plus.real(), tau.plus.imag()}},
                     {"tau_minus", {tau.minus.real(), tau.minus.imag()}}};
  }
  return j;
}

}  // namespace crossres
