#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crossres/analytic_function.hpp"

namespace crossres {

/// Interaction W(x, hD) = r0(x) + i r1(x) hD. Both coefficients are real on the real line.
struct CouplingSpec {
  AnalyticFunction r0 = AnalyticFunction::constant(0.0, "r0");
  AnalyticFunction r1 = AnalyticFunction::constant(1.0, "r1");
  /// Permit r0 = r1 = 0 (decoupled sanity runs). Off by default.
  bool allow_degenerate = false;

  /// Principal symbol W(x, xi) = r0(x) + i r1(x) xi.
  cplx symbol(double x, cplx xi) const { return r0(x) + cplx(0.0, 1.0) * r1(x) * xi; }
  bool degenerate() const { return r0.is_zero() && r1.is_zero(); }
};

struct Box {
  double x_min = -8.0;
  double x_max = 14.0;
};

/// The full model: two potentials, the coupling, the energy window
/// [E0 - delta0, E0 + delta0] - i[0, C0 h] and the complex-distortion parameters.
struct ProblemSpec {
  PotentialSpec V1;
  PotentialSpec V2;
  CouplingSpec coupling;
  double E0 = 1.0;
  double delta0 = 0.1;
  double C0 = 2.0;
  double theta = 0.3;
  double x_infty = 3.0;
  double ramp_width = 1.0;
  Box box;

  /// Checks the invariants that need no root solving (E0 > 0, 0 < theta < pi/4, ...).
  void check_basic() const;

  /// Copy with a different distortion angle.
  ProblemSpec with_theta(double new_theta) const {
    ProblemSpec p = *this;
    p.theta = new_theta;
    return p;
  }
};

/// Turning points a(E), b(E), c(E): V1(a) = V1(c) = E, V2(b) = E.
struct TurningPoints {
  cplx a;
  cplx b;
  cplx c;
};

/// Slopes at the crossing: tau1 = V1'(0), tau2 = -V2'(0), gamma = tau1 + tau2.
struct CrossingSlopes {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double gamma = 0.0;
};

enum class CheckStatus { pass, fail, waived };

std::string to_string(CheckStatus status);

struct AssumptionCheck {
  std::string id;  // "config", "A2", ..., "A5"
  CheckStatus status = CheckStatus::pass;
  std::string diagnostic;
  std::optional<double> where;  // offending x, when there is one
};

struct ValidationReport {
  std::vector<AssumptionCheck> checks;

  bool ok() const;
  const AssumptionCheck* find(const std::string& id) const;
};

/// Dense-sampling check of the structural assumptions on the real line.
ValidationReport validate_assumptions(const ProblemSpec& problem, std::size_t samples = 4096);

/// Turning points at a real energy, found by sampling the box and polishing each bracket.
TurningPoints turning_points(const ProblemSpec& problem, double E);

/// Turning points at a complex energy by Newton continuation from the real roots at Re E
/// along the straight segment Re E -> E.
TurningPoints turning_points(const ProblemSpec& problem, cplx E);

CrossingSlopes crossing_slopes(const ProblemSpec& problem);

}  // namespace crossres
