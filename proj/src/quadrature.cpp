#include "crossres/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

GaussLegendreRule build_rule(std::size_t n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn1 = n == 1 ? 1.0 : p0;
      dp = static_cast<double>(n) * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 0.5 * w;
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

enum class Power { half, minus_half };

cplx integrand(cplx w, Power p) { return p == Power::half ? std::sqrt(w) : 1.0 / std::sqrt(w); }

// Detects the integrand touching the negative real axis between the ends.
void branch_check(const std::vector<cplx>& w_along, const std::vector<double>& u_along) {
  for (std::size_t i = 0; i < w_along.size(); ++i) {
    const cplx w = w_along[i];
    if (u_along[i] < 0.02 || u_along[i] > 0.98) continue;
    if (w.real() < 0.0 && std::abs(w.imag()) <= 1e-14 * std::abs(w)) {
      std::ostringstream os;
      os << "sqrt integrand on its branch cut (E - V = " << w << ")";
      throw BranchError(os.str());
    }
    if (i > 0 && w.real() < 0.0 && w_along[i - 1].real() < 0.0 &&
        (w.imag() < 0.0) != (w_along[i - 1].imag() < 0.0)) {
      throw BranchError("sqrt integrand crosses its branch cut inside the segment");
    }
  }
}

// One Gauss-Legendre estimate of a half-segment [p, q] with optional singular end at p.
cplx piece_estimate(const PotentialSpec& V, cplx p, cplx q, cplx E, bool singular_at_p, Power power,
                    const GaussLegendreRule& rule, bool check) {
  const cplx delta = q - p;
  cplx sum = 0.0;
  std::vector<cplx> ws;
  std::vector<double> us;
  if (check) {
    ws.reserve(rule.nodes.size());
    us.reserve(rule.nodes.size());
  }
  // Near a turning point E - V(t) is tiny; forming it as a difference of O(1) values
  // would lose all digits, so it is built from the increment of V away from p. The
  // rounding-level residual E - V(p) is dropped: keeping it would move the square-root
  // zero off the node set and cost O(sqrt(residual)) in the inverse-root integral.
  cplx w_p = E - V(p);
  if (singular_at_p && std::abs(w_p) <= 1e-12 * std::max(1.0, std::abs(E))) w_p = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    cplx t, jac, step;
    if (singular_at_p) {
      step = delta * (u * u);
      t = p + step;
      jac = 2.0 * u * delta;
    } else {
      t = p + delta * u;
      jac = delta;
    }
    const cplx w = singular_at_p ? w_p - V.increment(p, step) : E - V(t);
    if (check) {
      ws.push_back(w);
      us.push_back(u);
    }
    sum += rule.weights[i] * integrand(w, power) * jac;
  }
  if (check) branch_check(ws, us);
  return sum;
}

cplx piece(const PotentialSpec& V, cplx p, cplx q, cplx E, bool singular_at_p, Power power) {
  constexpr std::size_t n_min = 16, n_max = 1024;
  cplx prev = piece_estimate(V, p, q, E, singular_at_p, power, gauss_legendre(n_min), true);
  double diff = 0.0;
  for (std::size_t n = 2 * n_min; n <= n_max; n *= 2) {
    const cplx cur = piece_estimate(V, p, q, E, singular_at_p, power, gauss_legendre(n), false);
    diff = std::abs(cur - prev);
    if (diff <= 1e-14 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  if (diff <= 1e-11) return prev;
  throw AccuracyError("sqrt quadrature did not converge", diff);
}

cplx integrate(const PotentialSpec& V, cplx lo, cplx hi, cplx E, SingularEnds ends, Power power) {
  if (lo == hi) return 0.0;
  if (ends.lo && ends.hi) {
    const cplx mid = 0.5 * (lo + hi);
    // The right half is integrated from hi backwards so its singular end is at p.
    return piece(V, lo, mid, E, true, power) - piece(V, hi, mid, E, true, power);
  }
  if (ends.hi) return -piece(V, hi, lo, E, true, power);
  return piece(V, lo, hi, E, ends.lo, power);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(n));
  return *slot;
}

cplx sqrt_integral(const PotentialSpec& V, cplx lo, cplx hi, cplx E, SingularEnds ends) {
  return integrate(V, lo, hi, E, ends, Power::half);
}

cplx inv_sqrt_integral(const PotentialSpec& V, cplx lo, cplx hi, cplx E, SingularEnds ends) {
  return integrate(V, lo, hi, E, ends, Power::minus_half);
}

}  // namespace crossres
