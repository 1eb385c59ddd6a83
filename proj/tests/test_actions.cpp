#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crossres/actions.hpp"
#include "crossres/errors.hpp"
#include "crossres/quadrature.hpp"
#include "support.hpp"

using namespace crossres;
using std::numbers::pi;
using testing::reference_problem;

namespace {

void check_conj(cplx a, cplx b, double tol = 1e-10) {
  CHECK(std::abs(a - std::conj(b)) < tol * std::max(1.0, std::abs(a)));
}

}  // namespace

TEST_SUITE("actions") {
  TEST_CASE("sqrt_integral closed forms") {
    const auto quad = AnalyticFunction::polynomial({0.0, 0.0, 1.0});
    CHECK(std::abs(sqrt_integral(quad, -1.0, 1.0, 1.0, kBothSingular) - pi / 2) < 1e-12);
    const auto lin = AnalyticFunction::polynomial({0.0, 1.0});
    CHECK(std::abs(sqrt_integral(lin, 0.0, 1.0, 1.0, kHiSingular) - 2.0 / 3.0) < 1e-12);
    CHECK(sqrt_integral(lin, 0.4, 0.4, 1.0, kRegular) == cplx(0.0));
    // int_{-1}^{1} (1 - t^2)^{-1/2} = pi
    CHECK(std::abs(inv_sqrt_integral(quad, -1.0, 1.0, 1.0, kBothSingular) - pi) < 1e-11);
  }

  TEST_CASE("sqrt_integral: segment through the cut is rejected") {
    const auto quad = AnalyticFunction::polynomial({0.0, 0.0, 1.0});
    CHECK_THROWS_AS(sqrt_integral(quad, -2.0, 2.0, 1.0, kRegular), BranchError);
  }

  TEST_CASE("action_set: harmonic well") {
    const ProblemSpec p = testing::harmonic_problem();
    for (double E : {0.5, 1.0, 2.0}) {
      const ActionSet s = action_set(p, E);
      CHECK(std::abs(s.A - pi * E / 2) < 1e-10);
      CHECK(std::abs(s.dA_dE - pi / 2) < 1e-9);
      CHECK(std::abs(s.S1L - pi * E / 4) < 1e-10);
    }
  }

  TEST_CASE("action_set: reference pair closed forms") {
    const ProblemSpec p = reference_problem();
    for (double E : {0.9, 0.97, 1.0, 1.1}) {
      const ActionSet s = action_set(p, E);
      CHECK(s.A.real() == doctest::Approx(testing::pt_A(E)).epsilon(1e-12));
      CHECK(s.dA_dE.real() == doctest::Approx(testing::pt_dA(E)).epsilon(1e-10));
      CHECK(s.A.real() > 0.0);
      CHECK(s.B.real() > 0.0);
      CHECK(std::abs(s.A - (s.S1L + s.S1R)) < 1e-12 * std::abs(s.A));
      CHECK(std::abs(s.B - (s.S2L + s.S1R)) < 1e-12 * std::abs(s.B));
      CHECK(std::abs(s.A.imag()) < 1e-14);
    }
  }

  TEST_CASE("action_set: channel-2 action against direct integration") {
    // S2L = int_b^0 sqrt(1 + 1.5 tanh x) dx, by composite Simpson after x = b + (0 - b) u^2.
    const ProblemSpec p = reference_problem();
    const ActionSet s = action_set(p, 1.0);
    const double b = s.turning.b.real();
    const int n = 20000;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double u = static_cast<double>(i) / n;
      const double x = b - b * u * u;
      const double f = std::sqrt(std::max(0.0, 1.0 - testing::pt_V2(x))) * (-2.0 * b * u);
      sum += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    CHECK(s.S2L.real() == doctest::Approx(sum / (3.0 * n)).epsilon(1e-9));
  }

  TEST_CASE("action_set: complex energy and Schwarz symmetry") {
    const ProblemSpec p = reference_problem();
    const cplx E(1.0, -0.01);
    const ActionSet s = action_set(p, E);
    const ActionSet c = action_set(p, std::conj(E));
    CHECK(s.A.imag() < 0.0);
    check_conj(s.A, c.A);
    check_conj(s.B, c.B);
    check_conj(s.S1L, c.S1L);
    check_conj(s.S1R, c.S1R);
    check_conj(s.S2L, c.S2L);
    check_conj(s.dA_dE, c.dA_dE);
    check_conj(s.dB_dE, c.dB_dE);
    check_conj(s.turning.a, c.turning.a);
    check_conj(s.turning.b, c.turning.b);
    check_conj(s.turning.c, c.turning.c);
    // Complex closed form of the Poschl-Teller action.
    const cplx expected = pi * (std::sqrt(testing::pt_depth()) - std::sqrt(2.0 - E));
    CHECK(std::abs(s.A - expected) < 1e-10);
    CHECK(std::abs(s.A - (s.S1L + s.S1R)) < 1e-12 * std::abs(s.A));
  }

  TEST_CASE("action_set: monotone A and derivatives against centered differences") {
    const ProblemSpec p = reference_problem();
    double prev = -1.0;
    for (double E = 0.9; E <= 1.1 + 1e-12; E += 0.025) {
      const ActionSet s = action_set(p, E);
      CHECK(s.A.real() > prev);
      prev = s.A.real();
      const double d = 1e-5;
      const ActionSet up = action_set(p, E + d), dn = action_set(p, E - d);
      CHECK(s.dA_dE.real() == doctest::Approx((up.A.real() - dn.A.real()) / (2 * d)).epsilon(1e-6));
      CHECK(s.dB_dE.real() == doctest::Approx((up.B.real() - dn.B.real()) / (2 * d)).epsilon(1e-6));
    }
  }

  TEST_CASE("action_A agrees with action_set") {
    const ProblemSpec p = reference_problem();
    const ActionAndSlope a = action_A(p, cplx(1.03, -0.004));
    const ActionSet s = action_set(p, cplx(1.03, -0.004));
    CHECK(std::abs(a.A - s.A) < 1e-12);
    CHECK(std::abs(a.dA_dE - s.dA_dE) < 1e-10);
  }

  TEST_CASE("phase functions") {
    const ProblemSpec p = reference_problem();
    const ActionSet s = action_set(p, 1.0);
    CHECK(phase(p, Channel::one, PhaseBase::origin, 0.0, cplx(0.95, -0.01)) == cplx(0.0));
    CHECK(std::abs(phase(p, Channel::one, PhaseBase::turning_point, s.turning.c.real(), 1.0) - s.A) < 1e-11);
    CHECK(std::abs(phase(p, Channel::two, PhaseBase::turning_point, 0.0, 1.0) - s.S2L) < 1e-11);
    CHECK(std::abs(phase(p, Channel::one, PhaseBase::origin, s.turning.c.real(), 1.0) - s.S1R) < 1e-11);
    CHECK_THROWS_AS(phase(p, Channel::one, PhaseBase::origin, -3.0, 1.0), DomainError);
  }
}
