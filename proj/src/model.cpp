#include "crossres/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

struct Bracket {
  double lo;
  double hi;
};

template <class F>
std::vector<Bracket> sign_changes(F&& f, double x_min, double x_max, std::size_t samples) {
  std::vector<Bracket> out;
  const double dx = (x_max - x_min) / static_cast<double>(samples - 1);
  double x_prev = x_min;
  double f_prev = f(x_min);
  for (std::size_t i = 1; i < samples; ++i) {
    const double x = (i + 1 == samples) ? x_max : x_min + dx * static_cast<double>(i);
    const double fx = f(x);
    if (f_prev == 0.0) {
      out.push_back({x_prev, x_prev});
    } else if ((f_prev < 0.0) != (fx < 0.0) && fx != 0.0) {
      out.push_back({x_prev, x});
    }
    x_prev = x;
    f_prev = fx;
  }
  if (f_prev == 0.0) out.push_back({x_prev, x_prev});
  return out;
}

// Root of V(x) = E inside a sign-change bracket, polished by Newton.
double polish_root(const AnalyticFunction& V, double E, Bracket br) {
  if (br.lo == br.hi) return br.lo;
  auto f = [&](double x) { return V(x) - E; };
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t iters = 200;
  auto [lo, hi] = boost::math::tools::toms748_solve(f, br.lo, br.hi, tol, iters);
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const auto j = V.jet(x);
    if (j.d1 == 0.0) break;
    const double step = (j.value - E) / j.d1;
    if (!std::isfinite(step)) break;
    x -= step;
  }
  return x;
}

struct RealRoot {
  double x;
  double slope;
};

std::vector<RealRoot> real_roots(const AnalyticFunction& V, double E, const Box& box, std::size_t samples) {
  std::vector<RealRoot> roots;
  for (const auto& br : sign_changes([&](double x) { return V(x) - E; }, box.x_min, box.x_max, samples)) {
    const double x = polish_root(V, E, br);
    roots.push_back({x, V.jet(x).d1});
  }
  return roots;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void check_separation(const TurningPoints& tp) {
  const double tol = 1e-6;
  if (std::abs(tp.a - tp.c) < tol || std::abs(tp.a - tp.b) < tol || std::abs(tp.b - tp.c) < tol) {
    std::ostringstream os;
    os << "turning points collide: a=" << tp.a << " b=" << tp.b << " c=" << tp.c;
    throw DegeneracyError(os.str());
  }
}

cplx newton_root(const AnalyticFunction& V, cplx E, cplx x0) {
  cplx x = x0;
  const double tol = 1e-13 * std::max(1.0, std::abs(E));
  for (int it = 0; it < 50; ++it) {
    const auto j = V.jet(x);
    const cplx r = j.value - E;
    if (std::abs(r) < tol) return x;
    if (j.d1 == cplx(0.0)) break;
    const cplx step = r / j.d1;
    x -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) {
      if (std::abs(V(x) - E) < 1e-12 * std::max(1.0, std::abs(E))) return x;
    }
  }
  throw ConvergenceError("complex Newton for turning point of " + V.name() + " did not converge in 50 iterations", x);
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::waived: return "WAIVED";
  }
  return "?";
}

void ProblemSpec::check_basic() const {
  if (!(E0 > 0.0)) throw ConfigError("E0 must be positive");
  if (!(delta0 > 0.0)) throw ConfigError("delta0 must be positive");
  if (!(C0 > 0.0)) throw ConfigError("C0 must be positive");
  if (!(theta > 0.0 && theta < std::numbers::pi / 4)) throw ConfigError("theta must lie in (0, pi/4)");
  if (!(ramp_width > 0.0)) throw ConfigError("ramp_width must be positive");
  if (!(box.x_min < 0.0 && box.x_max > x_infty)) throw ConfigError("box must contain 0 and x_infty");
  if (coupling.degenerate() && !coupling.allow_degenerate)
    throw ConfigError("r0 = r1 = 0 requires the degenerate-coupling flag");
}

bool ValidationReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
}

const AssumptionCheck* ValidationReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

TurningPoints turning_points(const ProblemSpec& problem, double E) {
  constexpr std::size_t samples = 4096;
  const auto r1 = real_roots(problem.V1, E, problem.box, samples);
  const auto r2 = real_roots(problem.V2, E, problem.box, samples);

  std::optional<double> a, c, b;
  for (const auto& r : r1) {
    if (r.x < 0.0 && r.slope < 0.0) a = r.x;  // rightmost descending root left of 0
    if (r.x > 0.0 && r.slope > 0.0 && !c) c = r.x;
  }
  for (const auto& r : r2)
    if (r.x < 0.0 && r.slope < 0.0) b = r.x;
  if (!a || !c || !b) {
    std::ostringstream os;
    os << "no real turning points bracketing the crossing at E=" << E << " (a " << (a ? "found" : "missing")
       << ", b " << (b ? "found" : "missing") << ", c " << (c ? "found" : "missing") << ")";
    throw DomainError(os.str());
  }
  TurningPoints tp{cplx(*a, 0.0), cplx(*b, 0.0), cplx(*c, 0.0)};
  check_separation(tp);
  return tp;
}

TurningPoints turning_points(const ProblemSpec& problem, cplx E) {
  TurningPoints tp = turning_points(problem, E.real());
  if (E.imag() == 0.0) return tp;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(E.imag()) / 0.005)));
  for (int s = 1; s <= steps; ++s) {
    const cplx Es(E.real(), E.imag() * static_cast<double>(s) / steps);
    tp.a = newton_root(problem.V1, Es, tp.a);
    tp.c = newton_root(problem.V1, Es, tp.c);
    tp.b = newton_root(problem.V2, Es, tp.b);
  }
  check_separation(tp);
  return tp;
}

CrossingSlopes crossing_slopes(const ProblemSpec& problem) {
  CrossingSlopes s;
  s.tau1 = problem.V1.jet(0.0).d1;
  s.tau2 = -problem.V2.jet(0.0).d1;
  s.gamma = s.tau1 + s.tau2;
  if (!(s.gamma > 0.0)) throw AssumptionError("gamma = V1'(0) - V2'(0) must be positive, got " + fmt(s.gamma));
  if (!(s.tau1 > 0.0) || !(s.tau2 > 0.0))
    throw AssumptionError("crossing slopes need V1'(0) > 0 and V2'(0) < 0 (tau1=" + fmt(s.tau1) +
                          ", tau2=" + fmt(s.tau2) + ")");
  return s;
}

ValidationReport validate_assumptions(const ProblemSpec& problem, std::size_t samples) {
  ValidationReport report;
  samples = std::max<std::size_t>(samples, 4096);
  const double E0 = problem.E0;
  const Box& box = problem.box;
  auto add = [&](std::string id, bool ok, std::string diag, std::optional<double> where = std::nullopt) {
    report.checks.push_back({std::move(id), ok ? CheckStatus::pass : CheckStatus::fail, std::move(diag), where});
  };

  try {
    // Basic parameter invariants and evaluability over the box.
    try {
      problem.check_basic();
      const double dx = (box.x_max - box.x_min) / static_cast<double>(samples - 1);
      for (std::size_t i = 0; i < samples; ++i) {
        const double x = box.x_min + dx * static_cast<double>(i);
        (void)problem.V1.jet(x);
        (void)problem.V2.jet(x);
        (void)problem.coupling.r0.jet(x);
        (void)problem.coupling.r1.jet(x);
      }
      add("config", true, "parameters within range; potentials finite on the box");
    } catch (const Error& e) {
      add("config", false, e.what());
    }

    // (A2) limits at +-infinity.
    {
      const double v1m = problem.V1.limit(-1), v1p = problem.V1.limit(+1);
      const double v2m = problem.V2.limit(-1), v2p = problem.V2.limit(+1);
      std::ostringstream os;
      os << "V1(-inf)=" << v1m << " V1(+inf)=" << v1p << " V2(-inf)=" << v2m << " V2(+inf)=" << v2p << " E0=" << E0;
      const bool ok = v1m > E0 && v1p > E0 && v2m > E0 && v2p < E0;
      add("A2", ok, os.str());
    }

    // (A3) exactly three simple turning points with the stated slope signs.
    {
      const auto r1 = real_roots(problem.V1, E0, box, samples);
      const auto r2 = real_roots(problem.V2, E0, box, samples);
      std::ostringstream os;
      bool ok = true;
      std::optional<double> where;
      if (r1.size() != 2 || r2.size() != 1) {
        ok = false;
        os << "expected 2 roots of V1=E0 and 1 root of V2=E0 on the box, found " << r1.size() << " and "
           << r2.size();
        if (!r1.empty()) where = r1.front().x;
      } else {
        const double a = r1[0].x, c = r1[1].x, b = r2[0].x;
        os << "a=" << a << " b=" << b << " c=" << c;
        if (!(a < b && b < 0.0 && 0.0 < c)) {
          ok = false;
          os << "; ordering a<b<0<c violated";
          where = b;
        }
        const double tol = 1e-10;
        if (!(r1[0].slope < -tol)) {
          ok = false;
          os << "; V1'(a) must be negative";
          where = a;
        }
        if (!(r1[1].slope > tol)) {
          ok = false;
          os << "; V1'(c) must be positive";
          where = c;
        }
        if (!(r2[0].slope < -tol)) {
          ok = false;
          os << "; V2'(b) must be negative";
          where = b;
        }
      }
      add("A3", ok, os.str(), where);
    }

    // (A4) crossing set reduced to {0}, V1(0) = V2(0) = 0, slope signs.
    {
      std::ostringstream os;
      bool ok = true;
      std::optional<double> where;
      const auto j1 = problem.V1.jet(0.0), j2 = problem.V2.jet(0.0);
      if (std::abs(j1.value) > 1e-12 || std::abs(j2.value) > 1e-12) {
        ok = false;
        os << "V1(0)=" << j1.value << " V2(0)=" << j2.value << " (must vanish); ";
        where = 0.0;
      }
      if (!(j1.d1 > 0.0) || !(j2.d1 < 0.0)) {
        ok = false;
        os << "V1'(0)=" << j1.d1 << " V2'(0)=" << j2.d1 << " (need >0 and <0); ";
        where = 0.0;
      }
      auto diff = [&](double x) { return problem.V1(x) - problem.V2(x); };
      const double dx = (box.x_max - box.x_min) / static_cast<double>(samples - 1);
      const double near_zero = 4.0 * dx;
      std::size_t crossings = 0;
      for (const auto& br : sign_changes(diff, box.x_min, box.x_max, samples)) {
        double x = br.lo;
        if (br.lo != br.hi) {
          boost::math::tools::eps_tolerance<double> tol(50);
          std::uintmax_t it = 200;
          auto [lo, hi] = boost::math::tools::toms748_solve(diff, br.lo, br.hi, tol, it);
          x = 0.5 * (lo + hi);
        }
        if (std::abs(x) < near_zero) continue;
        if (problem.V1(x) <= E0 && problem.V2(x) <= E0) {
          ++crossings;
          where = x;
        }
      }
      // Touching without sign change: both below E0 and |V1 - V2| tiny away from 0.
      const double scale = std::max(1.0, std::abs(E0));
      for (std::size_t i = 0; i < samples; ++i) {
        const double x = box.x_min + dx * static_cast<double>(i);
        if (std::abs(x) < near_zero) continue;
        const double v1 = problem.V1(x), v2 = problem.V2(x);
        if (v1 <= E0 && v2 <= E0 && std::abs(v1 - v2) < 1e-12 * scale) {
          ++crossings;
          where = x;
          break;
        }
      }
      if (crossings > 0) {
        ok = false;
        os << "crossing set {V1=V2<=E0} not reduced to {0}";
      }
      if (ok) os << "gamma=" << (j1.d1 - j2.d1);
      add("A4", ok, os.str(), where);
    }

    // (A5) ellipticity of W at (0, +-sqrt(E0)).
    {
      const double r0 = problem.coupling.r0(0.0), r1 = problem.coupling.r1(0.0);
      const cplx wp = problem.coupling.symbol(0.0, std::sqrt(E0));
      const cplx wm = problem.coupling.symbol(0.0, -std::sqrt(E0));
      std::ostringstream os;
      os << "r0(0)=" << r0 << " r1(0)=" << r1 << " |W(0,+sqrt E0)|=" << std::abs(wp)
         << " |W(0,-sqrt E0)|=" << std::abs(wm);
      const bool elliptic = std::abs(wp) > 0.0 && std::abs(wm) > 0.0;
      if (!elliptic && problem.coupling.allow_degenerate) {
        report.checks.push_back({"A5", CheckStatus::waived, os.str() + " (degenerate-coupling mode)", 0.0});
      } else {
        add("A5", elliptic, os.str(), elliptic ? std::nullopt : std::optional<double>(0.0));
      }
    }

    // Box containment [a(E0) - 5, x_infty + 10], and x_infty beyond c(E0).
    if (const auto* a3 = report.find("A3"); a3 && a3->status == CheckStatus::pass) {
      const TurningPoints tp = turning_points(problem, E0);
      std::ostringstream os;
      bool ok = true;
      if (!(problem.x_infty > tp.c.real())) {
        ok = false;
        os << "x_infty=" << problem.x_infty << " must exceed c(E0)=" << tp.c.real() << "; ";
      }
      if (!(box.x_min <= tp.a.real() - 5.0 && box.x_max >= problem.x_infty + 10.0)) {
        ok = false;
        os << "box [" << box.x_min << ", " << box.x_max << "] must contain [" << tp.a.real() - 5.0 << ", "
           << problem.x_infty + 10.0 << "]";
      }
      if (ok) os << "box and x_infty consistent with turning points";
      add("domain", ok, os.str());
    }
  } catch (const EvaluationError& e) {
    add("config", false, e.what());
  }
  return report;
}

}  // namespace crossres
