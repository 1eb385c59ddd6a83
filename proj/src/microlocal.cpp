#include "crossres/microlocal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

void require_positive_energy(double E) {
  if (!(E > 0.0)) throw DomainError("crossing constants need E > 0");
}

// h^{i s mu h} = exp(i s mu h log h)
cplx h_power_phase(double mu, double h, double sign) { return std::exp(kI * (sign * mu * h * std::log(h))); }

}  // namespace

CrossingData crossing_data(const ProblemSpec& problem, double E) {
  CrossingData d;
  d.E = E;
  d.r0 = problem.coupling.r0(0.0);
  d.r1 = problem.coupling.r1(0.0);
  d.gamma = crossing_slopes(problem).gamma;
  return d;
}

MuConstants mu_constants(const CrossingData& d) {
  require_positive_energy(d.E);
  const double mu = -(d.r0 * d.r0 + d.r1 * d.r1 * d.E) / (2.0 * d.gamma * std::sqrt(d.E));
  return {mu, -mu};
}

MuConstants mu_constants(const ProblemSpec& problem, double E) { return mu_constants(crossing_data(problem, E)); }

TauPair tau_pm(const CrossingData& d) {
  require_positive_energy(d.E);
  const double pref = std::sqrt(kPi / d.gamma);
  const double re = d.r0 * std::pow(d.E, -0.25);
  const double im = d.r1 * std::pow(d.E, 0.25);
  return {pref * cplx(re, im), pref * cplx(re, -im)};
}

TauPair tau_pm(const ProblemSpec& problem, double E) { return tau_pm(crossing_data(problem, E)); }

TransferMatrices transfer_matrices(const CrossingData& d, double h) {
  if (!(h > 0.0)) throw DomainError("h must be positive");
  const double mu = mu_constants(d).mu;
  const TauPair tau = tau_pm(d);
  const double root_h = std::sqrt(h);
  const cplx up = std::exp(kI * (kPi / 4.0));    // e^{i pi/4}
  const cplx down = std::exp(-kI * (kPi / 4.0));  // e^{-i pi/4}
  const cplx minus_off = up * tau.minus * root_h * h_power_phase(mu, h, +1.0);  // e^{i pi/4} tau_- h^{1/2 + i mu h}
  const cplx plus_off = down * tau.plus * root_h * h_power_phase(mu, h, -1.0);  // e^{-i pi/4} tau_+ h^{1/2 - i mu h}

  TransferMatrices t;
  t.minus << 1.0, minus_off, plus_off, 1.0;
  t.plus << 1.0, -plus_off, -minus_off, 1.0;
  return t;
}

TransferMatrices transfer_matrices(const ProblemSpec& problem, double E, double h) {
  return transfer_matrices(crossing_data(problem, E), h);
}

MaslovFactors maslov_factors(double S1L, double S1R, double S2L, double h) {
  if (!(h > 0.0)) throw DomainError("h must be positive");
  return {-kI * std::exp(kI * (2.0 * S1L / h)), kI * std::exp(-kI * (2.0 * S1R / h)),
          -kI * std::exp(kI * (2.0 * S2L / h))};
}

MaslovFactors maslov_factors(const ProblemSpec& problem, double E, double h) {
  const ActionSet s = action_set(problem, E);
  return maslov_factors(s.S1L.real(), s.S1R.real(), s.S2L.real(), h);
}

MicrolocalInputs microlocal_inputs(const ProblemSpec& problem, double E) {
  const ActionSet s = action_set(problem, E);
  MicrolocalInputs in;
  in.crossing = crossing_data(problem, E);
  in.S1L = s.S1L.real();
  in.S1R = s.S1R.real();
  in.S2L = s.S2L.real();
  in.dA_dE = s.dA_dE.real();
  return in;
}

OutgoingCoefficient outgoing_coefficient(const MicrolocalInputs& in, double h) {
  const CrossingData& d = in.crossing;
  const TransferMatrices T = transfer_matrices(d, h);
  const MaslovFactors sigma = maslov_factors(in.S1L, in.S1R, in.S2L, h);
  const double mu = mu_constants(d).mu;

  OutgoingCoefficient out;
  // t_{2,R}^+ = sigma_{1,R} tau^+_{2,1} tau^-_{1,1} + sigma_{2,L} tau^+_{2,2} tau^-_{2,1}
  out.composed = sigma.sigma_1R * T.plus(1, 0) * T.minus(0, 0) + sigma.sigma_2L * T.plus(1, 1) * T.minus(1, 0);

  const double a = d.r0 * std::pow(d.E, -0.25);
  const double b = d.r1 * std::pow(d.E, 0.25);
  const double pref = 2.0 * std::sqrt(kPi * h / d.gamma);
  const cplx phase = std::exp(kI * ((in.S2L - in.S1R) / h));
  const double arg = in.B() / h + kPi / 4.0 - mu * h * std::log(h);
  out.display = -kI * pref * phase * (a * std::sin(arg) + b * std::cos(arg));

  const double arg0 = in.B() / h + kPi / 4.0;
  const double br = a * std::sin(arg0) + b * std::cos(arg0);
  out.leading_modulus_sq = 4.0 * kPi * h / d.gamma * br * br;

  const double scale = std::max(std::abs(out.display), std::sqrt(h) * (std::abs(a) + std::abs(b)));
  if (std::abs(out.composed - out.display) > 1e-8 * scale) {
    std::ostringstream os;
    os << "outgoing coefficient: composed " << out.composed << " vs display " << out.display;
    throw ConsistencyError(os.str());
  }
  return out;
}

OutgoingCoefficient outgoing_coefficient(const ProblemSpec& problem, double E, double h) {
  return outgoing_coefficient(microlocal_inputs(problem, E), h);
}

TransferData transfer_data(const ProblemSpec& problem, double E, double h) {
  const MicrolocalInputs in = microlocal_inputs(problem, E);
  TransferData t;
  const TransferMatrices T = transfer_matrices(in.crossing, h);
  t.T_minus = T.minus;
  t.T_plus = T.plus;
  t.sigma = maslov_factors(in.S1L, in.S1R, in.S2L, h);
  t.tau = tau_pm(in.crossing);
  t.mu = mu_constants(in.crossing);
  t.t_2R_plus = outgoing_coefficient(in, h);
  return t;
}

cplx monodromy_residual(const ProblemSpec& problem, cplx E, double h) {
  if (!(h > 0.0)) throw DomainError("h must be positive");
  const cplx A = action_A(problem, E).A;
  return std::exp(2.0 * kI * A / h) + 1.0;
}

double width_from_green(const MicrolocalInputs& in, double h) {
  const OutgoingCoefficient t = outgoing_coefficient(in, h);
  // ||u||^2 on (-inf, x0) at leading order is I_1^2 = 4 A'(E)
  return t.leading_modulus_sq * h / (4.0 * in.dA_dE);
}

double width_from_green(const ProblemSpec& problem, double E, double h) {
  return width_from_green(microlocal_inputs(problem, E), h);
}

std::array<cplx, 2> wkb_leading(const ProblemSpec& problem, const WkbBranch& branch, double x, double E) {
  if (x == 0.0) throw DomainError("WKB symbol is singular at x = 0");
  if ((branch.side == Side::left) != (x < 0.0)) throw DomainError("x on the wrong side of the crossing for this branch");
  const bool one = branch.channel == Channel::one;
  const double Vj = one ? problem.V1(x) : problem.V2(x);
  const double Vk = one ? problem.V2(x) : problem.V1(x);
  const double kinetic = E - Vj;
  if (!(kinetic > 0.0)) {
    std::ostringstream os;
    os << "x=" << x << " is not in the allowed region of channel " << static_cast<int>(branch.channel);
    throw DomainError(os.str());
  }
  const double r0 = problem.coupling.r0(x);
  const double r1 = problem.coupling.r1(x);
  const double root = std::sqrt(kinetic);
  const double quarter = std::sqrt(root);
  // a^-_{2,0} and b^+_{1,0} carry +i r1, a^+_{2,0} and b^-_{1,0} carry -i r1.
  const double s = (one == (branch.direction == Direction::minus)) ? 1.0 : -1.0;
  const cplx cross = cplx(r0, s * r1 * root) / ((Vj - Vk) * quarter);
  const cplx own = 1.0 / quarter;
  if (one) return {own, cross};
  return {cross, own};
}

}  // namespace crossres
