#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossres/model.hpp"

namespace crossres {

/// Scan of width_from_green(E, h) against width_coefficient(E, h) h^2.
struct ConsistencyScan {
  int samples = 0;
  double max_relative = 0.0;
  double worst_E = 0.0;
  double worst_h = 0.0;
  double worst_r0 = 0.0;
  double worst_r1 = 0.0;
};

struct ConsistencyOptions {
  int draws = 200;
  double h_lo = 0.005;
  double h_hi = 0.1;
  bool random_coupling = true;  // draw r0, r1 in [-2, 2] (not both ~0) instead of the problem's
  std::uint64_t seed = 20240611;
};

/// Draws E uniformly in the window and h log-uniformly in [h_lo, h_hi].
ConsistencyScan consistency_scan(const ProblemSpec& problem, const ConsistencyOptions& options = {});

/// Derived constants of a problem (turning points, slopes, actions, crossing constants)
/// at E0, as written by the `fixtures` command.
nlohmann::json fixtures_json(const ProblemSpec& problem);

}  // namespace crossres
