#include "crossres/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>
#include <Eigen/LU>
#include <Eigen/QR>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<cplx, 8>;  // two columns of (u1, u1', u2, u2')

const cplx kI(0.0, 1.0);

struct System {
  const ProblemSpec& problem;
  const DeformedContour& contour;
  cplx E;
  double h;

  void operator()(const State& y, State& dy, double x) const {
    const cplx z = contour.F(x);
    const cplx dF = contour.dF(x);
    const cplx v1 = problem.V1(z), v2 = problem.V2(z);
    const cplx r0 = problem.coupling.r0(z);
    const Jet<cplx> r1 = problem.coupling.r1.jet(z);
    const double h2 = h * h;
    for (int c = 0; c < 2; ++c) {
      const cplx u1 = y[4 * c], p1 = y[4 * c + 1], u2 = y[4 * c + 2], p2 = y[4 * c + 3];
      dy[4 * c] = dF * p1;
      dy[4 * c + 1] = dF * (((v1 - E) * u1 + h * r0 * u2) / h2 + r1.value * p2);
      dy[4 * c + 2] = dF * p2;
      dy[4 * c + 3] = dF * (((v2 - E) * u2 + h * r0 * u1) / h2 - r1.d1 * u1 - r1.value * p1);
    }
  }
};

// WKB start u = 1, u' = s q / h - q' / (2 q) for the local exponent q.
std::array<cplx, 2> wkb_start(cplx q, cplx dq, cplx s, double h) { return {1.0, s * q / h - dq / (2.0 * q)}; }

ShotBlock integrate(const System& sys, State y, double x_from, double x_to, const ShootingOptions& options) {
  auto stepper = ode::make_controlled(options.abs_tol, options.rel_tol, ode::runge_kutta_fehlberg78<State>());
  const double dir = x_to > x_from ? 1.0 : -1.0;
  const double chunk = std::min(0.25, 5.0 * sys.h);
  ShotBlock block;
  block.log_scale = 0.0;
  double x = x_from;
  double dt = dir * 0.1 * sys.h;
  while (dir * (x_to - x) > 0.0) {
    const double next = dir * (x_to - x) > chunk ? x + dir * chunk : x_to;
    ode::integrate_adaptive(stepper, sys, y, x, next, dt);
    x = next;
    Eigen::Matrix<cplx, 4, 2> m;
    for (int c = 0; c < 2; ++c)
      for (int r = 0; r < 4; ++r) m(r, c) = y[4 * c + r];
    Eigen::HouseholderQR<Eigen::Matrix<cplx, 4, 2>> qr(m);
    block.q = qr.householderQ() * Eigen::Matrix<cplx, 4, 2>::Identity();
    block.log_scale += std::log(qr.matrixQR()(0, 0)) + std::log(qr.matrixQR()(1, 1));
    for (int c = 0; c < 2; ++c)
      for (int r = 0; r < 4; ++r) y[4 * c + r] = block.q(r, c);
    for (const cplx& v : y)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw ConvergenceError("shooting overflowed despite renormalisation", x);
  }
  return block;
}

}  // namespace

ShotBlock shoot_left(const ProblemSpec& problem, const DeformedContour& contour, cplx E, double h,
                     const ShootingOptions& options) {
  if (!(h > 0.0)) throw DomainError("h must be positive");
  const double x_left = turning_points(problem, problem.E0).a.real() - 4.0;
  const cplx z = contour.F(x_left);
  State y{};
  {
    const Jet<cplx> v = problem.V1.jet(z);
    const cplx k = std::sqrt(v.value - E);
    const auto s = wkb_start(k, v.d1 / (2.0 * k), 1.0, h);
    y[0] = s[0];
    y[1] = s[1];
  }
  {
    const Jet<cplx> v = problem.V2.jet(z);
    const cplx k = std::sqrt(v.value - E);
    const auto s = wkb_start(k, v.d1 / (2.0 * k), 1.0, h);
    y[6] = s[0];
    y[7] = s[1];
  }
  return integrate(System{problem, contour, E, h}, y, x_left, options.x_match, options);
}

ShotBlock shoot_right(const ProblemSpec& problem, const DeformedContour& contour, cplx E, double h,
                      const ShootingOptions& options) {
  if (!(h > 0.0)) throw DomainError("h must be positive");
  const double x_right = ecs_box(problem, contour, h).x_max;
  const cplx z = contour.F(x_right);
  State y{};
  {
    const Jet<cplx> v = problem.V1.jet(z);
    const cplx k = std::sqrt(v.value - E);
    const auto s = wkb_start(k, v.d1 / (2.0 * k), -1.0, h);
    y[0] = s[0];
    y[1] = s[1];
  }
  {
    // outgoing: u ~ k^{-1/2} exp(i int k / h), k = sqrt(E - V2)
    const Jet<cplx> v = problem.V2.jet(z);
    const cplx k = std::sqrt(E - v.value);
    const auto s = wkb_start(k, -v.d1 / (2.0 * k), kI, h);
    y[6] = s[0];
    y[7] = s[1];
  }
  return integrate(System{problem, contour, E, h}, y, x_right, options.x_match, options);
}

WronskianValue wronskian(const ProblemSpec& problem, const DeformedContour& contour, cplx E, double h,
                         const ShootingOptions& options) {
  const ShotBlock left = shoot_left(problem, contour, E, h, options);
  const ShotBlock right = shoot_right(problem, contour, E, h, options);
  Eigen::Matrix<cplx, 4, 4> m;
  m << left.q, right.q;
  return {m.determinant(), left.log_scale + right.log_scale};
}

WronskianValue wronskian(const ProblemSpec& problem, cplx E, double h) {
  return wronskian(problem, build_contour(problem), E, h);
}

std::vector<OracleResonance> wronskian_roots(const ProblemSpec& problem, double h, const std::vector<cplx>& seeds,
                                             const ShootingOptions& options) {
  const DeformedContour contour = build_contour(problem);
  auto inside = [&](cplx E) {
    return std::abs(E.real() - problem.E0) <= 2.0 * problem.delta0 && E.imag() >= -2.0 * problem.C0 * h &&
           E.imag() <= 2.0 * problem.C0 * h;
  };

  std::vector<OracleResonance> out;
  for (const cplx seed : seeds) {
    OracleResonance res;
    res.E = seed;
    res.method = OracleMethod::wronskian;
    res.theta_used = problem.theta;
    res.converged = false;
    res.residual = 1.0;
    if (!inside(seed)) {
      out.push_back(res);
      continue;
    }
    try {
      const cplx ref = wronskian(problem, contour, seed, h, options).log_scale;
      auto f = [&](cplx E) {
        const WronskianValue w = wronskian(problem, contour, E, h, options);
        return w.mantissa * std::exp(w.log_scale - ref);
      };
      const double d = 0.01 * h;
      cplx x0 = seed - d, x1 = seed + d, x2 = seed;
      cplx f0 = f(x0), f1 = f(x1), f2 = f(x2);
      const double f_seed = std::max({std::abs(f0), std::abs(f1), std::abs(f2)});
      double step = INFINITY;
      for (int it = 0; it < 60; ++it) {
        // Muller step through (x0, f0), (x1, f1), (x2, f2)
        const cplx q = (x2 - x1) / (x1 - x0);
        const cplx A = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
        const cplx B = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 + q * q * f0;
        const cplx C = (1.0 + q) * f2;
        const cplx disc = std::sqrt(B * B - 4.0 * A * C);
        const cplx den = std::abs(B + disc) >= std::abs(B - disc) ? B + disc : B - disc;
        cplx x3;
        if (den == 0.0)
          x3 = x2 + 0.5 * (x2 - x1);
        else
          x3 = x2 - (x2 - x1) * 2.0 * C / den;
        step = std::abs(x3 - x2);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        x2 = x3;
        if (!inside(x2)) break;
        f2 = f(x2);
        if (f2 == 0.0 || (step < 1e-11 && std::abs(f2) <= 1e-6 * f_seed)) break;
      }
      res.E = x2;
      res.residual = f_seed > 0.0 ? std::abs(f2) / f_seed : 0.0;
      res.converged = inside(x2) && step < 1e-11 && res.residual <= 1e-6;
    } catch (const Error&) {
      res.converged = false;
    }
    out.push_back(res);
  }

  std::vector<OracleResonance> merged;
  for (const OracleResonance& r : out) {
    bool dup = false;
    if (r.converged)
      for (OracleResonance& m : merged)
        if (m.converged && std::abs(m.E - r.E) < 1e-9) {
          dup = true;
          if (r.residual < m.residual) m = r;
        }
    if (!dup) merged.push_back(r);
  }
  return merged;
}

}  // namespace crossres
