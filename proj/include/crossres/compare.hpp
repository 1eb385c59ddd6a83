#pragma once

#include <complex>
#include <string>
#include <vector>

#include "crossres/config.hpp"
#include "crossres/ecs.hpp"
#include "crossres/semiclassics.hpp"

namespace crossres {

/// One prediction paired with one oracle resonance.
struct ComparisonRow {
  double h = 0.0;
  int k = 0;
  OracleMethod method = OracleMethod::ecs;
  double e_k = 0.0;
  double C = 0.0;
  cplx predicted;
  cplx oracle;
  double res_re = 0.0;  // |Re E - e_k|
  double res_im = 0.0;  // |Im E + C h^2|
  double pair_dist = 0.0;
};

/// Search rectangle for oracle resonances at one h.
struct Window {
  double re_lo = 0.0;
  double re_hi = 0.0;
  double im_lo = 0.0;
  double im_hi = 0.0;

  bool contains(cplx E) const {
    return E.real() >= re_lo && E.real() <= re_hi && E.imag() >= im_lo && E.imag() <= im_hi;
  }
};

/// Grid spacing pi h / A'(E0) near the centre of the window.
double level_spacing(const ProblemSpec& problem, double h);

/// Prediction window [E0 - delta0 - s/2, E0 + delta0 + s/2] (s = level spacing), so edge
/// levels keep their neighbours; the oracle window adds another s/2 and spans
/// Im in [-C0 h, 1e-10].
Window prediction_window(const ProblemSpec& problem, double h);
Window oracle_window(const ProblemSpec& problem, double h);

/// Predictions over prediction_window.
std::vector<ResonancePrediction> predict_for_compare(const ProblemSpec& problem, double h);

/// ECS resonances inside `window`, covering it with overlapping discs. `box` is shared
/// between angles so that theta-comparisons see the same grid.
std::vector<OracleResonance> ecs_resonances(const ProblemSpec& problem, double h, int N, const Window& window,
                                            const Box& box);

/// Resonances of `primary` that reappear in `other` within `tol`.
struct StabilitySplit {
  std::vector<OracleResonance> stable;
  std::vector<OracleResonance> unstable;
};
StabilitySplit theta_filter(const std::vector<OracleResonance>& primary, const std::vector<OracleResonance>& other,
                            double tol);

/// Injective pairing of oracle resonances to predictions. Candidate pairs are taken in
/// order of |E - predicted|, ties going to the k closest to the previous match; a pair is
/// only admitted when its distance is below a quarter of the level spacing.
std::vector<ComparisonRow> pair_resonances(const std::vector<ResonancePrediction>& predictions,
                                           const std::vector<OracleResonance>& oracle, double h, OracleMethod method,
                                           double max_distance);

/// Everything computed at one h.
struct HRun {
  double h = 0.0;
  int N = 0;
  std::vector<ResonancePrediction> predictions;
  std::vector<OracleResonance> ecs;          // theta-stable
  std::vector<OracleResonance> ecs_dropped;  // theta-unstable
  std::vector<OracleResonance> wronskian;    // converged, theta-stable
  std::vector<OracleResonance> wronskian_dropped;
  std::vector<ComparisonRow> rows;
  std::vector<std::string> notes;
};

struct CompareResult {
  std::vector<HRun> runs;
  std::vector<ComparisonRow> rows;  // sorted by (h desc, k, method)
  std::vector<std::string> notes;
  bool ok = true;                   // every h has at least one pairing per method
};

/// Throws ConsistencyError when some h has no pairing at all.
CompareResult run_compare(const ExperimentConfig& config);

}  // namespace crossres
