#include "crossres/actions.hpp"

#include <cmath>
#include <sstream>

#include "crossres/errors.hpp"
#include "crossres/quadrature.hpp"

namespace crossres {

ActionSet action_set(const ProblemSpec& problem, cplx E) {
  ActionSet s;
  s.E = E;
  s.turning = turning_points(problem, E);
  const auto& tp = s.turning;
  s.A = sqrt_integral(problem.V1, tp.a, tp.c, E, kBothSingular);
  s.S1L = sqrt_integral(problem.V1, tp.a, 0.0, E, kLoSingular);
  s.S1R = sqrt_integral(problem.V1, 0.0, tp.c, E, kHiSingular);
  s.S2L = sqrt_integral(problem.V2, tp.b, 0.0, E, kLoSingular);
  s.B = s.S2L + s.S1R;
  s.dA_dE = 0.5 * inv_sqrt_integral(problem.V1, tp.a, tp.c, E, kBothSingular);
  s.dB_dE = 0.5 * (inv_sqrt_integral(problem.V2, tp.b, 0.0, E, kLoSingular) +
                   inv_sqrt_integral(problem.V1, 0.0, tp.c, E, kHiSingular));
  return s;
}

ActionAndSlope action_A(const ProblemSpec& problem, cplx E) {
  const TurningPoints tp = turning_points(problem, E);
  return {sqrt_integral(problem.V1, tp.a, tp.c, E, kBothSingular),
          0.5 * inv_sqrt_integral(problem.V1, tp.a, tp.c, E, kBothSingular)};
}

cplx phase(const ProblemSpec& problem, Channel j, PhaseBase base, double x, cplx E) {
  const TurningPoints tp = turning_points(problem, E);
  const PotentialSpec& V = j == Channel::one ? problem.V1 : problem.V2;
  const cplx left = j == Channel::one ? tp.a : tp.b;
  const double tol = 1e-12;
  const bool at_left = std::abs(cplx(x) - left) < tol;
  const bool at_right = j == Channel::one && std::abs(cplx(x) - tp.c) < tol;

  if (x < left.real() - tol || (j == Channel::one && x > tp.c.real() + tol)) {
    std::ostringstream os;
    os << "x=" << x << " outside the allowed region of channel " << static_cast<int>(j);
    throw DomainError(os.str());
  }
  const cplx hi = at_left ? left : (at_right ? tp.c : cplx(x));
  if (base == PhaseBase::turning_point) {
    if (at_left) return 0.0;
    return sqrt_integral(V, left, hi, E, {true, at_right});
  }
  return sqrt_integral(V, 0.0, hi, E, {false, at_left || at_right});
}

}  // namespace crossres
