#include "crossres/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "crossres/actions.hpp"
#include "crossres/contour.hpp"
#include "crossres/errors.hpp"
#include "crossres/parallel.hpp"
#include "crossres/shooting.hpp"

namespace crossres {

namespace {

constexpr double kMergeTol = 1e-9;

bool by_energy(const OracleResonance& a, const OracleResonance& b) {
  return a.E.real() != b.E.real() ? a.E.real() < b.E.real() : a.E.imag() < b.E.imag();
}

std::vector<OracleResonance> merge_sorted(std::vector<OracleResonance> v) {
  std::sort(v.begin(), v.end(), by_energy);
  std::vector<OracleResonance> out;
  for (const OracleResonance& r : v) {
    bool dup = false;
    for (OracleResonance& m : out)
      if (std::abs(m.E - r.E) < kMergeTol) {
        dup = true;
        if (r.residual < m.residual) m = r;
      }
    if (!dup) out.push_back(r);
  }
  return out;
}

std::string describe(cplx E) {
  std::ostringstream os;
  os.precision(10);
  os << E.real() << (E.imag() < 0 ? " - " : " + ") << std::abs(E.imag()) << "i";
  return os.str();
}

}  // namespace

double level_spacing(const ProblemSpec& problem, double h) {
  return std::numbers::pi * h / action_A(problem, problem.E0).dA_dE.real();
}

Window prediction_window(const ProblemSpec& problem, double h) {
  const double m = 0.5 * level_spacing(problem, h);
  return {problem.E0 - problem.delta0 - m, problem.E0 + problem.delta0 + m, -problem.C0 * h, 1e-10};
}

Window oracle_window(const ProblemSpec& problem, double h) {
  Window w = prediction_window(problem, h);
  const double m = 0.5 * level_spacing(problem, h);
  w.re_lo -= m;
  w.re_hi += m;
  return w;
}

std::vector<ResonancePrediction> predict_for_compare(const ProblemSpec& problem, double h) {
  const Window w = prediction_window(problem, h);
  ProblemSpec wide = problem;
  wide.E0 = 0.5 * (w.re_lo + w.re_hi);
  wide.delta0 = 0.5 * (w.re_hi - w.re_lo);
  return predict(wide, h);
}

std::vector<OracleResonance> ecs_resonances(const ProblemSpec& problem, double h, int N, const Window& window,
                                            const Box& box) {
  const DeformedContour contour = build_contour(problem);
  const DiscretizedOperator op = discretize(problem, contour, N, h, box);
  const double depth = window.im_hi - window.im_lo;
  const double width = window.re_hi - window.re_lo;
  const double cell = std::max(level_spacing(problem, h), depth);
  const int discs = std::max(1, static_cast<int>(std::ceil(width / cell)));
  const double dx = width / discs;
  const double radius = 0.5 * std::hypot(dx, depth) * 1.05;
  std::vector<OracleResonance> all;
  for (int d = 0; d < discs; ++d) {
    const cplx center(window.re_lo + (d + 0.5) * dx, 0.5 * (window.im_lo + window.im_hi));
    for (const OracleResonance& r : resonances_in_window(op, center, radius))
      if (window.contains(r.E)) all.push_back(r);
  }
  return merge_sorted(std::move(all));
}

StabilitySplit theta_filter(const std::vector<OracleResonance>& primary, const std::vector<OracleResonance>& other,
                            double tol) {
  StabilitySplit s;
  for (const OracleResonance& r : primary) {
    bool found = false;
    for (const OracleResonance& o : other) found = found || std::abs(o.E - r.E) < tol;
    (found ? s.stable : s.unstable).push_back(r);
  }
  return s;
}

std::vector<ComparisonRow> pair_resonances(const std::vector<ResonancePrediction>& predictions,
                                           const std::vector<OracleResonance>& oracle, double h, OracleMethod method,
                                           double max_distance) {
  struct Candidate {
    std::size_t p, o;
    double dist;
  };
  std::vector<Candidate> cand;
  for (std::size_t p = 0; p < predictions.size(); ++p)
    for (std::size_t o = 0; o < oracle.size(); ++o) {
      const double d = std::abs(oracle[o].E - predictions[p].predicted);
      if (d <= max_distance) cand.push_back({p, o, d});
    }
  std::stable_sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });

  std::vector<bool> used_p(predictions.size(), false), used_o(oracle.size(), false);
  std::vector<ComparisonRow> rows;
  int previous_k = predictions.empty() ? 0 : predictions.front().k;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    // among exact ties, prefer the k nearest the previous match
    std::size_t best = i;
    for (std::size_t j = i + 1; j < cand.size() && cand[j].dist == cand[i].dist; ++j)
      if (std::abs(predictions[cand[j].p].k - previous_k) < std::abs(predictions[cand[best].p].k - previous_k))
        best = j;
    std::swap(cand[i], cand[best]);
    const Candidate& c = cand[i];
    if (used_p[c.p] || used_o[c.o]) continue;
    used_p[c.p] = used_o[c.o] = true;
    const ResonancePrediction& pr = predictions[c.p];
    const cplx E = oracle[c.o].E;
    ComparisonRow row;
    row.h = h;
    row.k = pr.k;
    row.method = method;
    row.e_k = pr.e_k;
    row.C = pr.width_coeff;
    row.predicted = pr.predicted;
    row.oracle = E;
    row.res_re = std::abs(E.real() - pr.e_k);
    row.res_im = std::abs(E.imag() + pr.width_coeff * h * h);
    row.pair_dist = c.dist;
    rows.push_back(row);
    previous_k = pr.k;
  }
  std::sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) { return a.k < b.k; });
  return rows;
}

CompareResult run_compare(const ExperimentConfig& config) {
  const ProblemSpec& base = config.problem;
  const std::vector<double> thetas = config.thetas();
  const bool want_ecs = std::find(config.methods.begin(), config.methods.end(), OracleMethod::ecs) != config.methods.end();
  const bool want_wr =
      std::find(config.methods.begin(), config.methods.end(), OracleMethod::wronskian) != config.methods.end();

  CompareResult result;
  result.runs.resize(config.h_values.size());
  std::vector<Box> boxes(config.h_values.size());
  for (std::size_t i = 0; i < config.h_values.size(); ++i) {
    HRun& run = result.runs[i];
    run.h = config.h_values[i];
    run.N = config.N_for(i);
    run.predictions = predict_for_compare(base, run.h);
    // box from the smallest angle (slowest tail decay), shared by all angles
    const double theta_min = *std::min_element(thetas.begin(), thetas.end());
    boxes[i] = ecs_box(base, build_contour(base.with_theta(theta_min)), run.h);
  }

  // ECS stage: one task per (h, theta).
  const std::size_t nh = config.h_values.size(), nt = thetas.size();
  std::vector<std::vector<OracleResonance>> ecs(nh * nt);
  if (want_ecs) {
    parallel_for(nh * nt, config.threads, [&](std::size_t t) {
      const std::size_t i = t / nt, j = t % nt;
      const HRun& run = result.runs[i];
      ecs[t] = ecs_resonances(base.with_theta(thetas[j]), run.h, run.N, oracle_window(base, run.h), boxes[i]);
    });
  }

  // Shooting stage: one task per (h, theta); seeds may use the primary-angle ECS output.
  std::vector<std::vector<OracleResonance>> wr(nh * nt);
  if (want_wr) {
    parallel_for(nh * nt, config.threads, [&](std::size_t t) {
      const std::size_t i = t / nt, j = t % nt;
      const HRun& run = result.runs[i];
      std::vector<cplx> seeds;
      for (const ResonancePrediction& p : run.predictions) seeds.push_back(p.predicted);
      if (config.seeds == SeedPolicy::predictions_and_ecs)
        for (const OracleResonance& r : ecs[i * nt]) seeds.push_back(r.E);
      const Window w = oracle_window(base, run.h);
      std::vector<OracleResonance> roots;
      for (const OracleResonance& r : wronskian_roots(base.with_theta(thetas[j]), run.h, seeds))
        if (r.converged && w.contains(r.E)) roots.push_back(r);
      wr[t] = merge_sorted(std::move(roots));
    });
  }

  for (std::size_t i = 0; i < nh; ++i) {
    HRun& run = result.runs[i];
    const double spacing = level_spacing(base, run.h);
    auto filtered = [&](const std::vector<std::vector<OracleResonance>>& all, std::vector<OracleResonance>& keep,
                        std::vector<OracleResonance>& drop) {
      keep = all[i * nt];
      for (std::size_t j = 1; j < nt; ++j) {
        StabilitySplit s = theta_filter(keep, all[i * nt + j], config.theta_tolerance);
        keep = std::move(s.stable);
        drop.insert(drop.end(), s.unstable.begin(), s.unstable.end());
      }
    };
    if (want_ecs) filtered(ecs, run.ecs, run.ecs_dropped);
    if (want_wr) filtered(wr, run.wronskian, run.wronskian_dropped);

    for (OracleMethod m : {OracleMethod::ecs, OracleMethod::wronskian}) {
      if ((m == OracleMethod::ecs && !want_ecs) || (m == OracleMethod::wronskian && !want_wr)) continue;
      const auto& found = m == OracleMethod::ecs ? run.ecs : run.wronskian;
      std::vector<ComparisonRow> rows = pair_resonances(run.predictions, found, run.h, m, 0.25 * spacing);
      std::ostringstream os;
      os << "h=" << run.h << " " << to_string(m) << ": " << rows.size() << " pairings, " << run.predictions.size()
         << " predictions, " << found.size() << " theta-stable resonances";
      run.notes.push_back(os.str());
      for (const ResonancePrediction& p : run.predictions) {
        const bool paired = std::any_of(rows.begin(), rows.end(), [&](const ComparisonRow& r) { return r.k == p.k; });
        if (!paired) run.notes.push_back("  unpaired prediction k=" + std::to_string(p.k) + " at " + describe(p.predicted));
      }
      for (const OracleResonance& r : found) {
        const bool paired = std::any_of(rows.begin(), rows.end(), [&](const ComparisonRow& c) { return c.oracle == r.E; });
        if (!paired) run.notes.push_back("  unpaired " + to_string(m) + " resonance " + describe(r.E));
      }
      const auto& dropped = m == OracleMethod::ecs ? run.ecs_dropped : run.wronskian_dropped;
      for (const OracleResonance& r : dropped)
        run.notes.push_back("  theta-unstable " + to_string(m) + " resonance dropped: " + describe(r.E));
      if (rows.empty()) {
        result.ok = false;
        result.notes.insert(result.notes.end(), run.notes.begin(), run.notes.end());
        throw ConsistencyError("no prediction/oracle pairing at h=" + std::to_string(run.h) + " (" + to_string(m) + ")");
      }
      run.rows.insert(run.rows.end(), rows.begin(), rows.end());
    }
    result.notes.insert(result.notes.end(), run.notes.begin(), run.notes.end());
    result.rows.insert(result.rows.end(), run.rows.begin(), run.rows.end());
  }

  std::stable_sort(result.rows.begin(), result.rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.h != b.h) return a.h > b.h;
    if (a.k != b.k) return a.k < b.k;
    return static_cast<int>(a.method) < static_cast<int>(b.method);
  });
  return result;
}

}  // namespace crossres
