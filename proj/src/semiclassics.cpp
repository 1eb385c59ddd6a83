#include "crossres/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "crossres/actions.hpp"
#include "crossres/errors.hpp"

namespace crossres {

namespace {

constexpr double kPi = std::numbers::pi;

// Solves g(E) = 0 on [lo, hi] for increasing g with derivative dg; Newton inside a
// shrinking bracket, bisection whenever Newton would leave it.
double monotone_solve(const std::function<std::pair<double, double>(double)>& g_and_dg, double lo, double hi,
                      double guess, double tol) {
  double g_lo = g_and_dg(lo).first;
  double g_hi = g_and_dg(hi).first;
  if (g_lo > 0.0 || g_hi < 0.0) {
    std::ostringstream os;
    os << "root not bracketed in [" << lo << ", " << hi << "]";
    throw ConvergenceError(os.str(), guess);
  }
  double E = std::clamp(guess, lo, hi);
  for (int it = 0; it < 100; ++it) {
    const auto [g, dg] = g_and_dg(E);
    if (std::abs(g) < tol) return E;
    if (g < 0.0)
      lo = E;
    else
      hi = E;
    double next = E - g / dg;
    if (!(dg > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(E))) return next;
    E = next;
  }
  throw ConvergenceError("monotone Newton/bisection did not converge", E);
}

}  // namespace

std::vector<GridPoint> bohr_grid(const ProblemSpec& problem, double h) {
  if (!(h > 0.0)) throw DomainError("h must be positive");
  const double lo = problem.E0 - problem.delta0;
  const double hi = problem.E0 + problem.delta0;
  const double A_lo = action_A(problem, lo).A.real();
  const double A_hi = action_A(problem, hi).A.real();
  const int k_min = static_cast<int>(std::ceil(A_lo / (kPi * h) - 0.5));
  const int k_max = static_cast<int>(std::floor(A_hi / (kPi * h) - 0.5));

  std::vector<GridPoint> grid;
  for (int k = k_min; k <= k_max; ++k) {
    const double target = (k + 0.5) * kPi * h;
    auto g = [&](double E) {
      const auto a = action_A(problem, E);
      return std::pair{a.A.real() - target, a.dA_dE.real()};
    };
    const double guess = lo + (hi - lo) * (target - A_lo) / (A_hi - A_lo);
    grid.push_back({k, monotone_solve(g, lo, hi, guess, 1e-12)});
  }
  return grid;
}

WidthInputs width_inputs(const ProblemSpec& problem, double E) {
  const ActionSet s = action_set(problem, E);
  WidthInputs in;
  in.E = E;
  in.B = s.B.real();
  in.dA_dE = s.dA_dE.real();
  in.r0 = problem.coupling.r0(0.0);
  in.r1 = problem.coupling.r1(0.0);
  in.gamma = crossing_slopes(problem).gamma;
  return in;
}

double width_bracket(const WidthInputs& in, double h) {
  const double phi = in.B / h + kPi / 4.0;
  return in.r0 * std::pow(in.E, -0.25) * std::sin(phi) + in.r1 * std::pow(in.E, 0.25) * std::cos(phi);
}

double width_coefficient(const WidthInputs& in, double h) {
  const double br = width_bracket(in, h);
  return kPi / (in.gamma * in.dA_dE) * br * br;
}

double width_coefficient(const ProblemSpec& problem, double E, double h) {
  if (!(h > 0.0)) throw DomainError("h must be positive");
  return width_coefficient(width_inputs(problem, E), h);
}

std::vector<ResonancePrediction> predict(const ProblemSpec& problem, double h) {
  std::vector<ResonancePrediction> out;
  for (const auto& g : bohr_grid(problem, h)) {
    ResonancePrediction p;
    p.k = g.k;
    p.e_k = g.e_k;
    p.h = h;
    p.width_coeff = width_coefficient(problem, g.e_k, h);
    p.predicted = cplx(g.e_k, -p.width_coeff * h * h);
    out.push_back(p);
  }
  return out;
}

std::vector<double> width_zero_loci(const ProblemSpec& problem, double h) {
  if (!(h > 0.0)) throw DomainError("h must be positive");
  const double r0 = problem.coupling.r0(0.0);
  const double r1 = problem.coupling.r1(0.0);
  if (r0 == 0.0 && r1 == 0.0) throw DomainError("width_zero_loci needs (r0(0), r1(0)) != (0, 0)");

  // Zeros of the bracket are the integer level sets of
  //   G(E) = (B(E)/h + pi/4 + shift(E)) / pi,
  // shift = atan(r1 sqrt(E) / r0) in general, 0 when r1 = 0, -pi/2 when r0 = 0.
  auto shift = [&](double E) -> std::pair<double, double> {
    if (r1 == 0.0) return {0.0, 0.0};
    if (r0 == 0.0) return {-kPi / 2.0, 0.0};
    const double q = r1 * std::sqrt(E) / r0;
    const double dq = r1 / (2.0 * std::sqrt(E) * r0);
    return {std::atan(q), dq / (1.0 + q * q)};
  };
  auto G = [&](double E) {
    const ActionSet s = action_set(problem, E);
    const auto [sh, dsh] = shift(E);
    return std::pair{(s.B.real() / h + kPi / 4.0 + sh) / kPi, (s.dB_dE.real() / h + dsh) / kPi};
  };

  const double lo = problem.E0 - problem.delta0;
  const double hi = problem.E0 + problem.delta0;
  const double G_lo = G(lo).first;
  const double G_hi = G(hi).first;
  std::vector<double> roots;
  for (int m = static_cast<int>(std::ceil(G_lo)); m <= static_cast<int>(std::floor(G_hi)); ++m) {
    auto g = [&](double E) {
      auto [v, dv] = G(E);
      return std::pair{v - m, dv};
    };
    const double guess = lo + (hi - lo) * (m - G_lo) / (G_hi - G_lo);
    // |B - target| < 1e-10 needs |G - m| < 1e-10 / (pi h)
    roots.push_back(monotone_solve(g, lo, hi, guess, 1e-11 / (kPi * h)));
  }
  return roots;
}

}  // namespace crossres
