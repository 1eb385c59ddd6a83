#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crossres/actions.hpp"
#include "crossres/errors.hpp"
#include "crossres/semiclassics.hpp"
#include "support.hpp"

using namespace crossres;
using std::numbers::pi;
using testing::reference_problem;

TEST_SUITE("semiclassics") {
  TEST_CASE("bohr_grid: harmonic well gives (2k+1) h") {
    const double h = 0.05;
    const auto grid = bohr_grid(testing::harmonic_problem(), h);
    REQUIRE(grid.size() == 2);
    for (const GridPoint& g : grid) CHECK(g.e_k == doctest::Approx((2 * g.k + 1) * h).epsilon(1e-12));
  }

  TEST_CASE("bohr_grid: reference pair against the closed-form inversion") {
    const ProblemSpec p = reference_problem();
    for (double h : {0.08, 0.05, 0.02}) {
      const auto grid = bohr_grid(p, h);
      REQUIRE_FALSE(grid.empty());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const GridPoint& g = grid[i];
        CHECK(g.e_k == doctest::Approx(testing::pt_level(g.k, h)).epsilon(1e-12));
        CHECK(std::abs(action_A(p, g.e_k).A.real() - (g.k + 0.5) * pi * h) < 1e-10);
        CHECK(g.e_k >= p.E0 - p.delta0);
        CHECK(g.e_k <= p.E0 + p.delta0);
        if (i > 0) {
          CHECK(g.k == grid[i - 1].k + 1);
          CHECK(g.e_k > grid[i - 1].e_k);
        }
      }
      // Every closed-form level inside the window is present.
      const int k_lo = grid.front().k, k_hi = grid.back().k;
      CHECK(testing::pt_level(k_lo - 1, h) < p.E0 - p.delta0);
      CHECK(testing::pt_level(k_hi + 1, h) > p.E0 + p.delta0);
    }
  }

  TEST_CASE("bohr_grid: spacing follows A'") {
    const ProblemSpec p = reference_problem();
    const double h = 0.05;
    const auto grid = bohr_grid(p, h);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double mid = 0.5 * (grid[i].e_k + grid[i - 1].e_k);
      CHECK(grid[i].e_k - grid[i - 1].e_k == doctest::Approx(pi * h / testing::pt_dA(mid)).epsilon(0.05));
    }
  }

  TEST_CASE("bohr_grid: empty when no level fits") {
    ProblemSpec p = reference_problem();
    p.delta0 = 0.01;
    CHECK(bohr_grid(p, 0.2).empty());
    CHECK_THROWS_AS(bohr_grid(p, 0.0), DomainError);
  }

  TEST_CASE("width_coefficient: hand-computed example") {
    WidthInputs in;
    in.E = 1.0;
    in.r0 = 1.0;
    in.r1 = 0.0;
    in.gamma = 2.0;
    in.dA_dE = pi / 2;
    const double h = 0.03;
    in.B = pi * h / 4;  // B/h + pi/4 = pi/2
    CHECK(width_coefficient(in, h) == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("width_coefficient: physical case and periodicity in B") {
    const ProblemSpec p = reference_problem();
    const double h = 0.04;
    for (double E : {0.93, 1.0, 1.06}) {
      const WidthInputs in = width_inputs(p, E);
      const double c = std::cos(in.B / h + pi / 4);
      const double expected = pi / (in.gamma * in.dA_dE) * std::sqrt(E) * c * c;
      CHECK(width_coefficient(in, h) == doctest::Approx(expected).epsilon(1e-13));
      CHECK(width_coefficient(p, E, h) == doctest::Approx(expected).epsilon(1e-13));
      WidthInputs shifted = in;
      shifted.B += 2 * pi * h;
      CHECK(std::abs(width_coefficient(shifted, h) - width_coefficient(in, h)) < 1e-12);
    }
  }

  TEST_CASE("width_coefficient is non-negative") {
    WidthInputs in;
    for (int i = 0; i < 200; ++i) {
      in.E = 0.5 + 0.01 * i;
      in.r0 = std::sin(0.7 * i);
      in.r1 = std::cos(1.3 * i);
      in.B = 0.37 * i;
      in.dA_dE = 1.0 + 0.01 * i;
      in.gamma = 0.5 + 0.02 * i;
      CHECK(width_coefficient(in, 0.01 + 0.001 * i) >= 0.0);
    }
  }

  TEST_CASE("predict") {
    const ProblemSpec p = reference_problem();
    const double h = 0.05;
    const auto pred = predict(p, h);
    const auto grid = bohr_grid(p, h);
    REQUIRE(pred.size() == grid.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
      CHECK(pred[i].k == grid[i].k);
      CHECK(pred[i].predicted.real() == pred[i].e_k);
      CHECK(pred[i].predicted.imag() <= 0.0);
      CHECK(pred[i].predicted.imag() >= -p.C0 * h);
      CHECK(pred[i].predicted.imag() == doctest::Approx(-pred[i].width_coeff * h * h));
    }
    const auto decoupled = predict(testing::with_coupling(p, 0.0, 0.0), h);
    for (const auto& d : decoupled) CHECK(d.width_coeff == 0.0);
  }

  TEST_CASE("width_zero_loci: r1 = 0 gives B = (m - 1/4) pi h") {
    const ProblemSpec p = testing::with_coupling(reference_problem(), 1.0, 0.0);
    const double h = 0.02;
    const auto roots = width_zero_loci(p, h);
    REQUIRE_FALSE(roots.empty());
    double cmax = 0.0;
    for (double E = 0.9; E <= 1.1; E += 0.0005) cmax = std::max(cmax, width_coefficient(p, E, h));
    for (double E : roots) {
      const double B = action_set(p, E).B.real();
      const double m = B / (pi * h) + 0.25;
      CHECK(std::abs(B - (std::round(m) - 0.25) * pi * h) < 1e-10);
      CHECK(width_coefficient(p, E, h) <= 1e-12 * cmax);
    }
  }

  TEST_CASE("width_zero_loci: single root in a narrow window") {
    ProblemSpec p = testing::with_coupling(reference_problem(), 1.0, 0.0);
    const double h = 0.02;
    const auto all = width_zero_loci(p, h);
    REQUIRE(all.size() >= 2);
    p.E0 = all[1];
    p.delta0 = 0.01;
    const auto one = width_zero_loci(p, h);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == doctest::Approx(all[1]).epsilon(1e-12));
  }

  TEST_CASE("width_zero_loci: r0 = 0 gives B = (m + 1/4) pi h") {
    const ProblemSpec p = reference_problem();
    const double h = 0.03;
    const auto roots = width_zero_loci(p, h);
    REQUIRE_FALSE(roots.empty());
    for (double E : roots) {
      const double B = action_set(p, E).B.real();
      const double m = B / (pi * h) - 0.25;
      CHECK(std::abs(B - (std::round(m) + 0.25) * pi * h) < 1e-10);
    }
    CHECK_THROWS_AS(width_zero_loci(testing::with_coupling(p, 0.0, 0.0), h), DomainError);
  }
}
