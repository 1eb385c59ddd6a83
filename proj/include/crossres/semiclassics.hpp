#pragma once

#include <complex>
#include <vector>

#include "crossres/model.hpp"

namespace crossres {

/// One Bohr-Sommerfeld energy: A(e_k) = (k + 1/2) pi h.
struct GridPoint {
  int k = 0;
  double e_k = 0.0;
};

/// All grid energies inside [E0 - delta0, E0 + delta0], increasing in k.
std::vector<GridPoint> bohr_grid(const ProblemSpec& problem, double h);

/// Ingredients of the width coefficient, so the formula can be driven with synthetic values.
struct WidthInputs {
  double E = 1.0;
  double B = 0.0;      // B(E)
  double dA_dE = 1.0;  // A'(E)
  double r0 = 0.0;     // r0(0)
  double r1 = 0.0;     // r1(0)
  double gamma = 1.0;  // V1'(0) - V2'(0)
};

WidthInputs width_inputs(const ProblemSpec& problem, double E);

/// r0 E^{-1/4} sin(B/h + pi/4) + r1 E^{1/4} cos(B/h + pi/4).
double width_bracket(const WidthInputs& in, double h);

/// C(E, h) = pi / (gamma A'(E)) * |bracket|^2. Depends on h through B(E)/h.
double width_coefficient(const WidthInputs& in, double h);
double width_coefficient(const ProblemSpec& problem, double E, double h);

struct ResonancePrediction {
  int k = 0;
  double e_k = 0.0;
  double width_coeff = 0.0;
  cplx predicted;  // e_k - i C h^2
  double h = 0.0;
};

std::vector<ResonancePrediction> predict(const ProblemSpec& problem, double h);

/// Energies in the window where C(E, h) vanishes. Requires (r0(0), r1(0)) != (0, 0).
std::vector<double> width_zero_loci(const ProblemSpec& problem, double h);

}  // namespace crossres
