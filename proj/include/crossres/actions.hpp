#pragma once

#include <complex>

#include "crossres/model.hpp"

namespace crossres {

/// Action integrals at a (possibly complex) energy E:
///   A    = int_a^c sqrt(E - V1)          S1L = int_a^0 sqrt(E - V1)
///   S1R  = int_0^c sqrt(E - V1)          S2L = int_b^0 sqrt(E - V2)
///   B    = S2L + S1R                     dA_dE = 1/2 int_a^c (E - V1)^{-1/2}
/// dB_dE is carried along for the vanishing-width solver.
struct ActionSet {
  cplx E;
  TurningPoints turning;
  cplx A;
  cplx B;
  cplx S1L;
  cplx S1R;
  cplx S2L;
  cplx dA_dE;
  cplx dB_dE;
};

ActionSet action_set(const ProblemSpec& problem, cplx E);

/// A(E) and A'(E) only (cheaper; used inside the Bohr-Sommerfeld Newton loop).
struct ActionAndSlope {
  cplx A;
  cplx dA_dE;
};
ActionAndSlope action_A(const ProblemSpec& problem, cplx E);

enum class Channel { one = 1, two = 2 };
enum class PhaseBase { turning_point, origin };

/// Phase functions nu_j(x) = int_{tp}^x sqrt(E - V_j) (tp = a for j=1, b for j=2) and
/// nu_j^0(x) = int_0^x sqrt(E - V_j). x must lie in the classically allowed region of channel j.
cplx phase(const ProblemSpec& problem, Channel j, PhaseBase base, double x, cplx E);

}  // namespace crossres
