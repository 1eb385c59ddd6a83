#include "crossres/contour.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crossres/errors.hpp"
#include "crossres/quadrature.hpp"

namespace crossres {

namespace {

// smoothstep s(t) = 6t^5 - 15t^4 + 10t^3, its antiderivative and derivative
double smooth(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smooth_integral(double t) { return t * t * t * t * (2.5 + t * (-3.0 + t)); }
double smooth_slope(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }

}  // namespace

DeformedContour::DeformedContour(double theta, double x_infty, double ramp_width)
    : theta_(theta), x_infty_(x_infty), width_(ramp_width) {
  if (!(ramp_width > 0.0)) throw ContourError("ramp width must be positive");
}

double DeformedContour::f(double x) const {
  if (x <= x_infty_) return 0.0;
  if (x >= ramp_end()) return x - x_c();
  return width_ * smooth_integral((x - x_infty_) / width_);
}

double DeformedContour::df(double x) const {
  if (x <= x_infty_) return 0.0;
  if (x >= ramp_end()) return 1.0;
  return smooth((x - x_infty_) / width_);
}

double DeformedContour::d2f(double x) const {
  if (x <= x_infty_ || x >= ramp_end()) return 0.0;
  return smooth_slope((x - x_infty_) / width_) / width_;
}

double tail_decay(const ProblemSpec& problem, const DeformedContour& contour, cplx E, double x) {
  if (x <= contour.x_infty()) return 0.0;
  const GaussLegendreRule& rule = gauss_legendre(32);
  const double span = x - contour.x_infty();
  const int pieces = std::max(1, static_cast<int>(std::ceil(span / 0.25)));
  const double len = span / pieces;
  double total = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double x0 = contour.x_infty() + p * len;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = x0 + len * rule.nodes[i];
      total += rule.weights[i] * len * (std::sqrt(E - problem.V2(contour.F(t))) * contour.dF(t)).imag();
    }
  }
  return total;
}

DeformedContour build_contour(const ProblemSpec& problem) {
  if (!(problem.theta > 0.0 && problem.theta < std::atan(1.0)))
    throw ContourError("theta must lie in (0, pi/4)");
  DeformedContour contour(problem.theta, problem.x_infty, problem.ramp_width);
  const double c = turning_points(problem, problem.E0).c.real();
  if (!(problem.x_infty > c)) {
    std::ostringstream os;
    os << "x_infty=" << problem.x_infty << " must exceed c(E0)=" << c;
    throw ContourError(os.str());
  }
  const double x_end = std::max(problem.box.x_max, contour.ramp_end() + 1.0);
  const int samples = 64;
  for (int i = 0; i <= samples; ++i) {
    const double x = contour.ramp_end() + (x_end - contour.ramp_end()) * i / samples;
    const double decay = tail_decay(problem, contour, problem.E0, x);
    if (decay < 0.0) {
      std::ostringstream os;
      os << "outgoing phase has Im = " << decay << " < 0 at x=" << x << "; increase theta or x_infty";
      throw ContourError(os.str());
    }
  }
  return contour;
}

}  // namespace crossres
