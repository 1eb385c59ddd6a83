#pragma once

#include <complex>

#include "crossres/model.hpp"

namespace crossres {

/// x -> F(x) = x + i theta f(x). f vanishes up to x_infty, rises through a quintic
/// smoothstep ramp of the given width (so f' goes 0 -> 1 with two continuous derivatives),
/// and is x - x_c beyond it, with x_c = x_infty + ramp_width / 2.
class DeformedContour {
 public:
  DeformedContour() = default;
  DeformedContour(double theta, double x_infty, double ramp_width);

  double theta() const noexcept { return theta_; }
  double x_infty() const noexcept { return x_infty_; }
  double ramp_width() const noexcept { return width_; }
  double x_c() const noexcept { return x_infty_ + 0.5 * width_; }
  double ramp_end() const noexcept { return x_infty_ + width_; }

  double f(double x) const;
  double df(double x) const;
  double d2f(double x) const;

  cplx F(double x) const { return {x, theta_ * f(x)}; }
  cplx dF(double x) const { return {1.0, theta_ * df(x)}; }
  cplx d2F(double x) const { return {0.0, theta_ * d2f(x)}; }

 private:
  double theta_ = 0.0;
  double x_infty_ = 0.0;
  double width_ = 1.0;
};

/// Im int_{x_infty}^{x} sqrt(E - V2(F(t))) F'(t) dt along the contour, x >= x_infty.
double tail_decay(const ProblemSpec& problem, const DeformedContour& contour, cplx E, double x);

/// Contour from the problem's theta, x_infty and ramp width. Requires x_infty > c(E0) and
/// checks that the outgoing channel-2 phase has non-negative imaginary part everywhere past
/// the ramp; throws ContourError otherwise.
DeformedContour build_contour(const ProblemSpec& problem);

}  // namespace crossres
