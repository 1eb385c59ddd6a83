#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "crossres/actions.hpp"
#include "crossres/model.hpp"

namespace crossres {

using Matrix2c = Eigen::Matrix2cd;

/// Everything the crossing-point constants depend on.
struct CrossingData {
  double E = 1.0;
  double r0 = 0.0;  // r0(0)
  double r1 = 0.0;  // r1(0)
  double gamma = 1.0;
};

CrossingData crossing_data(const ProblemSpec& problem, double E);

/// Leading-order mu and mu_hat = -mu.
struct MuConstants {
  double mu = 0.0;
  double mu_hat = 0.0;
};

MuConstants mu_constants(const CrossingData& d);
MuConstants mu_constants(const ProblemSpec& problem, double E);

/// tau_pm = sqrt(pi / gamma) (r0 E^{-1/4} +- i r1 E^{1/4}).
struct TauPair {
  cplx plus;
  cplx minus;
};

TauPair tau_pm(const CrossingData& d);
TauPair tau_pm(const ProblemSpec& problem, double E);

/// Leading-order transfer matrices at rho_- (T_minus) and rho_+ (T_plus).
struct TransferMatrices {
  Matrix2c minus;
  Matrix2c plus;
};

TransferMatrices transfer_matrices(const CrossingData& d, double h);
TransferMatrices transfer_matrices(const ProblemSpec& problem, double E, double h);

/// Turning-point connection factors t^+ = sigma t^-.
struct MaslovFactors {
  cplx sigma_1L;
  cplx sigma_1R;
  cplx sigma_2L;
};

MaslovFactors maslov_factors(double S1L, double S1R, double S2L, double h);
MaslovFactors maslov_factors(const ProblemSpec& problem, double E, double h);

/// Inputs of the outgoing coefficient and the Green-formula width.
struct MicrolocalInputs {
  CrossingData crossing;
  double S1L = 0.0;
  double S1R = 0.0;
  double S2L = 0.0;
  double dA_dE = 1.0;

  double B() const { return S2L + S1R; }
};

MicrolocalInputs microlocal_inputs(const ProblemSpec& problem, double E);

/// Amplitude of the resonant state on the outgoing branch of channel 2, normalised to 1
/// on the incoming branch of channel 1.
///
/// `composed` chains the Maslov factors and transfer-matrix entries;
/// `display` is the closed form -2i sqrt(pi h / gamma) e^{i(S2L - S1R)/h} [bracket], with the
/// bracket argument B/h + pi/4 - mu h log h carried by the h^{i mu h} phases, so the two
/// agree to rounding. `leading_modulus_sq` is the phase-free leading |t|^2,
/// (4 pi h / gamma) |r0 E^{-1/4} sin(B/h + pi/4) + r1 E^{1/4} cos(B/h + pi/4)|^2.
struct OutgoingCoefficient {
  cplx composed;
  cplx display;
  double leading_modulus_sq = 0.0;
};

/// Throws ConsistencyError if composed and display differ by more than 1e-8 relative.
OutgoingCoefficient outgoing_coefficient(const MicrolocalInputs& in, double h);
OutgoingCoefficient outgoing_coefficient(const ProblemSpec& problem, double E, double h);

/// Everything at one (E, h) in one record.
struct TransferData {
  Matrix2c T_minus;
  Matrix2c T_plus;
  MaslovFactors sigma;
  TauPair tau;
  MuConstants mu;
  OutgoingCoefficient t_2R_plus;
};

TransferData transfer_data(const ProblemSpec& problem, double E, double h);

/// e^{2 i A(E) / h} + 1; vanishes on the Bohr-Sommerfeld grid.
cplx monodromy_residual(const ProblemSpec& problem, cplx E, double h);

/// Width from the flux identity with the resonant-state norm at leading order:
/// |t|^2 h / (4 A'(E)).
double width_from_green(const MicrolocalInputs& in, double h);
double width_from_green(const ProblemSpec& problem, double E, double h);

enum class Side { left, right };
enum class Direction { minus, plus };

struct WkbBranch {
  Channel channel = Channel::one;
  Side side = Side::left;
  Direction direction = Direction::minus;
};

/// Leading WKB amplitude pair (channel-1 component, channel-2 component) on a branch.
/// The channel-j component is (E - V_j)^{-1/4}; the other one is the
/// (r0 +- i r1 sqrt(E - V_j)) / ((V_j - V_j') (E - V_j)^{1/4}) symbol, singular at x = 0.
std::array<cplx, 2> wkb_leading(const ProblemSpec& problem, const WkbBranch& branch, double x, double E);

}  // namespace crossres
