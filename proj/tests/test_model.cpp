#include <doctest.h>

#include <cmath>

#include "crossres/errors.hpp"
#include "crossres/model.hpp"
#include "support.hpp"

using namespace crossres;
using testing::reference_problem;

TEST_SUITE("model") {
  TEST_CASE("analytic functions: derivatives match finite differences") {
    const ProblemSpec p = reference_problem();
    for (const AnalyticFunction* f : {&p.V1, &p.V2}) {
      for (double x : {-2.0, -0.7, 0.0, 0.4, 3.1}) {
        const double d = 1e-5;
        const auto j = f->jet(x);
        CHECK(j.d1 == doctest::Approx(((*f)(x + d) - (*f)(x - d)) / (2 * d)).epsilon(1e-8));
        CHECK(j.d2 == doctest::Approx((f->jet(x + d).d1 - f->jet(x - d).d1) / (2 * d)).epsilon(1e-7));
      }
    }
  }

  TEST_CASE("analytic functions: closed forms and conjugate symmetry") {
    const ProblemSpec p = reference_problem();
    for (double x : {-3.0, -0.5, 0.0, 0.25, 2.0}) {
      CHECK(p.V1(x) == doctest::Approx(testing::pt_V1(x)).epsilon(1e-14));
      CHECK(p.V2(x) == doctest::Approx(testing::pt_V2(x)).epsilon(1e-14));
    }
    const cplx z(0.3, 0.2);
    CHECK(std::abs(p.V1(std::conj(z)) - std::conj(p.V1(z))) < 1e-14);
    CHECK(std::abs(p.V1(0.0)) < 1e-14);
    CHECK(p.V1.limit(-1) == 2.0);
    CHECK(p.V2.limit(+1) == -1.5);
  }

  TEST_CASE("analytic functions: increment avoids cancellation") {
    const ProblemSpec p = reference_problem();
    const cplx z0(-1.2, 0.01), step(1e-9, 0.0);
    const cplx inc = p.V1.increment(z0, step);
    const cplx slope = p.V1.jet(z0).d1;
    CHECK(std::abs(inc / step - slope) < 1e-8 * std::abs(slope));
    const auto poly = AnalyticFunction::polynomial({1.0, -2.0, 3.0});
    CHECK(std::abs(poly.increment(2.0, 0.5) - (poly(2.5) - poly(2.0))) < 1e-14);
  }

  TEST_CASE("validate_assumptions: reference pair passes") {
    const ValidationReport r = validate_assumptions(reference_problem());
    for (const auto& c : r.checks) {
      INFO(c.id << ": " << c.diagnostic);
      CHECK(c.status == CheckStatus::pass);
    }
    CHECK(r.ok());
  }

  TEST_CASE("validate_assumptions: identical wells fail A4") {
    ProblemSpec p = reference_problem();
    p.V2 = p.V1;
    const ValidationReport r = validate_assumptions(p);
    CHECK_FALSE(r.ok());
    REQUIRE(r.find("A4") != nullptr);
    CHECK(r.find("A4")->status == CheckStatus::fail);
  }

  TEST_CASE("validate_assumptions: vanishing coupling fails A5 unless degenerate mode") {
    ProblemSpec p = testing::with_coupling(reference_problem(), 0.0, 0.0);
    p.coupling.allow_degenerate = false;
    ValidationReport r = validate_assumptions(p);
    CHECK_FALSE(r.ok());
    REQUIRE(r.find("A5") != nullptr);
    CHECK(r.find("A5")->status == CheckStatus::fail);

    p.coupling.allow_degenerate = true;
    r = validate_assumptions(p);
    CHECK(r.ok());
    CHECK(r.find("A5")->status == CheckStatus::waived);
  }

  TEST_CASE("check_basic rejects bad parameters") {
    ProblemSpec p = reference_problem();
    p.theta = 0.9;
    CHECK_THROWS_AS(p.check_basic(), ConfigError);
    p = reference_problem();
    p.E0 = -1.0;
    CHECK_THROWS_AS(p.check_basic(), ConfigError);
  }

  TEST_CASE("turning_points: harmonic well") {
    const TurningPoints tp = turning_points(testing::harmonic_problem(), 1.0);
    CHECK(tp.a.real() == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(tp.c.real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(tp.b.real() == doctest::Approx(-0.5).epsilon(1e-13));
  }

  TEST_CASE("turning_points: reference pair against bisection") {
    const ProblemSpec p = reference_problem();
    const TurningPoints tp = turning_points(p, 1.0);
    auto g1 = [](double x) { return testing::pt_V1(x) - 1.0; };
    auto g2 = [](double x) { return testing::pt_V2(x) - 1.0; };
    CHECK(tp.a.real() == doctest::Approx(testing::bisect(g1, -3.0, -0.5)).epsilon(1e-12));
    CHECK(tp.c.real() == doctest::Approx(testing::bisect(g1, -0.5, 2.0)).epsilon(1e-12));
    CHECK(tp.b.real() == doctest::Approx(testing::bisect(g2, -3.0, 0.0)).epsilon(1e-12));
    CHECK(tp.a.real() == doctest::Approx(-1.543).epsilon(1e-3));
    CHECK(tp.b.real() == doctest::Approx(-0.8047).epsilon(1e-4));
    CHECK(tp.c.real() == doctest::Approx(0.543).epsilon(1e-3));
  }

  TEST_CASE("turning_points: ordering across the window") {
    const ProblemSpec p = reference_problem();
    for (double E = 0.9; E <= 1.1; E += 0.02) {
      const TurningPoints tp = turning_points(p, E);
      CHECK(tp.a.imag() == 0.0);
      CHECK(tp.a.real() < tp.b.real());
      CHECK(tp.b.real() < 0.0);
      CHECK(tp.c.real() > 0.0);
    }
  }

  TEST_CASE("turning_points: complex continuation") {
    const ProblemSpec p = reference_problem();
    const TurningPoints t0 = turning_points(p, 1.0);
    const TurningPoints t1 = turning_points(p, cplx(1.0, -0.01));
    CHECK(t1.a.imag() != 0.0);
    CHECK(std::abs(t1.a - t0.a) < 0.1);
    CHECK(std::abs(t1.a - t0.a) > 1e-3);
    // Roots of the analytic continuation.
    CHECK(std::abs(p.V1(t1.a) - cplx(1.0, -0.01)) < 1e-12);
    CHECK(std::abs(p.V1(t1.c) - cplx(1.0, -0.01)) < 1e-12);
    CHECK(std::abs(p.V2(t1.b) - cplx(1.0, -0.01)) < 1e-12);
    // First order: a(E) - a(1) ~ dE / V1'(a).
    const cplx predicted = cplx(0.0, -0.01) / p.V1.jet(t0.a.real()).d1;
    CHECK(std::abs(t1.a - t0.a - predicted) < 1e-2 * std::abs(predicted));
  }

  TEST_CASE("turning_points: continuity in E") {
    const ProblemSpec p = reference_problem();
    for (double E : {0.92, 1.0, 1.07}) {
      const TurningPoints t0 = turning_points(p, E);
      for (double d : {1e-3, -1e-3, 3e-4}) {
        const TurningPoints t1 = turning_points(p, E + d);
        CHECK(std::abs(t1.a - t0.a) <= 10 * std::abs(d) / std::abs(p.V1.jet(t0.a.real()).d1));
        CHECK(std::abs(t1.c - t0.c) <= 10 * std::abs(d) / std::abs(p.V1.jet(t0.c.real()).d1));
        CHECK(std::abs(t1.b - t0.b) <= 10 * std::abs(d) / std::abs(p.V2.jet(t0.b.real()).d1));
      }
    }
  }

  TEST_CASE("crossing_slopes") {
    const CrossingSlopes s = crossing_slopes(reference_problem());
    CHECK(s.tau1 == doctest::Approx(4.0 * std::tanh(0.5)).epsilon(1e-14));
    CHECK(s.tau2 == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(s.gamma == doctest::Approx(4.0 * std::tanh(0.5) + 1.5).epsilon(1e-14));
    const double d = 1e-5;
    const double fd = ((testing::pt_V1(d) - testing::pt_V2(d)) - (testing::pt_V1(-d) - testing::pt_V2(-d))) / (2 * d);
    CHECK(s.gamma == doctest::Approx(fd).epsilon(1e-8));

    ProblemSpec synth;
    synth.V1 = AnalyticFunction::polynomial({0.0, 1.0});
    synth.V2 = AnalyticFunction::polynomial({0.0, -1.0});
    CHECK(crossing_slopes(synth).gamma == 2.0);

    synth.V2 = AnalyticFunction::polynomial({0.0, 1.0});
    CHECK_THROWS_AS(crossing_slopes(synth), AssumptionError);
  }
}
