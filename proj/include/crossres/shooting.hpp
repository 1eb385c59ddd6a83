#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "crossres/contour.hpp"
#include "crossres/ecs.hpp"
#include "crossres/model.hpp"

namespace crossres {

struct ShootingOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double x_match = 0.0;
};

/// Two solutions of (P - E) u = 0 carried to the matching point as the columns of a 4x2
/// block (rows u1, u1', u2, u2', derivatives along the contour). The block is kept
/// orthonormal during the integration; `log_scale` is the accumulated log det of the
/// discarded triangular factors, so the true block is q * (something with det e^{log_scale}).
struct ShotBlock {
  Eigen::Matrix<cplx, 4, 2> q;
  cplx log_scale;
};

/// Solutions decaying to the left of a(E0) - 4, one started in each channel.
ShotBlock shoot_left(const ProblemSpec& problem, const DeformedContour& contour, cplx E, double h,
                     const ShootingOptions& options = {});

/// Channel-1 solution decaying and channel-2 solution outgoing along the rotated tail.
ShotBlock shoot_right(const ProblemSpec& problem, const DeformedContour& contour, cplx E, double h,
                      const ShootingOptions& options = {});

/// det[left | right] at the matching point, as mantissa * exp(log_scale). The 4x4 system
/// is trace-free, so the determinant does not depend on where the blocks meet.
struct WronskianValue {
  cplx mantissa;
  cplx log_scale;

  cplx log_value() const { return std::log(mantissa) + log_scale; }
};

WronskianValue wronskian(const ProblemSpec& problem, const DeformedContour& contour, cplx E, double h,
                         const ShootingOptions& options = {});
WronskianValue wronskian(const ProblemSpec& problem, cplx E, double h);

/// Muller iteration on the Wronskian from each seed, started at seed and seed +- 0.01 h.
/// A root is accepted when |W| is below 1e-6 of its largest value at the three starting
/// points and the last step is below 1e-11; `residual` holds that ratio. Seeds that diverge, stall or leave the doubled window are
/// returned with converged = false. Converged roots closer than 1e-9 are merged.
std::vector<OracleResonance> wronskian_roots(const ProblemSpec& problem, double h, const std::vector<cplx>& seeds,
                                             const ShootingOptions& options = {});

}  // namespace crossres
