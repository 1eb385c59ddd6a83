#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "crossres/analytic_function.hpp"

namespace crossres {

/// Gauss-Legendre rule mapped to [0, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule; safe to call from several threads.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Which ends of the segment carry an inverse-square-root type singularity
/// (a simple zero of E - V).
struct SingularEnds {
  bool lo = false;
  bool hi = false;
};

inline constexpr SingularEnds kBothSingular{true, true};
inline constexpr SingularEnds kLoSingular{true, false};
inline constexpr SingularEnds kHiSingular{false, true};
inline constexpr SingularEnds kRegular{false, false};

/// Integral of sqrt(E - V(t)) along the straight segment lo -> hi, principal branch.
///
/// Flagged ends are regularised by t = end +- (hi - lo) u^2, after which the integrand
/// is analytic in u and Gauss-Legendre converges geometrically. The rule is doubled
/// until two successive estimates agree; absolute accuracy is better than 1e-11.
/// Throws BranchError if the integrand crosses or grazes the cut away from an end,
/// AccuracyError if refinement stalls.
cplx sqrt_integral(const PotentialSpec& V, cplx lo, cplx hi, cplx E, SingularEnds ends);

/// Same, for (E - V(t))^{-1/2}.
cplx inv_sqrt_integral(const PotentialSpec& V, cplx lo, cplx hi, cplx E, SingularEnds ends);

}  // namespace crossres
