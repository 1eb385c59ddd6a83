#pragma once

#include <map>
#include <string>
#include <vector>

#include "crossres/compare.hpp"

namespace crossres {

/// log r = slope * log h + intercept by least squares.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
  bool valid = false;
};

SlopeFit fit_power_law(const std::vector<double>& h, const std::vector<double>& r);

struct WidthRatio {
  double h = 0.0;
  int k = 0;
  double C = 0.0;
  double ratio = 0.0;  // -Im E_oracle / h^2, to be compared with C
};

/// Slopes of the residuals against h.
///
/// The pooled fits use, for each h, the largest residual over all paired k (the error
/// envelope); the level labels shift with h, so per-k fits exist only for the k that are
/// paired at three or more h values. Residuals below 1e-13 are left out with a note.
struct ConvergenceFit {
  SlopeFit re;
  SlopeFit im;
  std::map<int, SlopeFit> per_k_re;
  std::map<int, SlopeFit> per_k_im;
  std::vector<WidthRatio> ratios;
  std::vector<std::string> notes;
};

/// Fit over the rows of one oracle method. Needs at least three distinct h.
ConvergenceFit convergence_fit(const std::vector<ComparisonRow>& rows, OracleMethod method);

}  // namespace crossres
