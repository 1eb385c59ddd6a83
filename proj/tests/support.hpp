#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "crossres/config.hpp"
#include "crossres/model.hpp"

namespace testing {

using crossres::cplx;

/// V1 = 2 - 2 cosh^2(0.5) sech^2(x + 0.5), V2 = -1.5 tanh x, r0 = 0, r1 = 1.
inline crossres::ProblemSpec reference_problem() {
  using crossres::AnalyticFunction;
  using crossres::FunctionKind;
  crossres::ProblemSpec p;
  p.V1 = AnalyticFunction(FunctionKind::shifted_sech_well, {{"asymptote", 2.0}, {"alpha", 1.0}, {"center", -0.5}}, "V1");
  p.V2 = AnalyticFunction(FunctionKind::tanh_step, {{"amplitude", 1.5}, {"alpha", 1.0}, {"center", 0.0}}, "V2");
  return p;
}

inline crossres::ProblemSpec with_coupling(crossres::ProblemSpec p, double r0, double r1) {
  p.coupling.r0 = crossres::AnalyticFunction::constant(r0, "r0");
  p.coupling.r1 = crossres::AnalyticFunction::constant(r1, "r1");
  p.coupling.allow_degenerate = r0 == 0.0 && r1 == 0.0;
  return p;
}

/// V1 = t^2, V2 = -2t: A(E) = pi E / 2 exactly.
inline crossres::ProblemSpec harmonic_problem() {
  crossres::ProblemSpec p;
  p.V1 = crossres::AnalyticFunction::polynomial({0.0, 0.0, 1.0}, "V1");
  p.V2 = crossres::AnalyticFunction::polynomial({0.0, -2.0}, "V2");
  return p;
}

inline std::string config_path(const std::string& name) { return std::string(CROSSRES_CONFIG_DIR) + "/" + name; }

// Closed forms of the reference pair, written out independently of the library.
inline double pt_depth() { return 2.0 * std::cosh(0.5) * std::cosh(0.5); }
inline double pt_V1(double x) { return 2.0 - pt_depth() / std::pow(std::cosh(x + 0.5), 2); }
inline double pt_V2(double x) { return -1.5 * std::tanh(x); }
inline double pt_A(double E) { return M_PI * (std::sqrt(pt_depth()) - std::sqrt(2.0 - E)); }
inline double pt_dA(double E) { return M_PI / (2.0 * std::sqrt(2.0 - E)); }
/// e_k from A(e_k) = (k + 1/2) pi h.
inline double pt_level(int k, double h) {
  const double s = std::sqrt(pt_depth()) - h * (k + 0.5);
  return 2.0 - s * s;
}

template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-16 * (1.0 + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace testing
