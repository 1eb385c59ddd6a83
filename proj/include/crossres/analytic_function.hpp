#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace crossres {

using cplx = std::complex<double>;

/// Value with first and second derivative.
template <class T>
struct Jet {
  T value{};
  T d1{};
  T d2{};
};

enum class FunctionKind {
  constant,            // value
  polynomial,          // c0 + c1 x + c2 x^2 + ...
  shifted_sech_well,   // asymptote - depth sech^2(alpha (x - center))
  tanh_step,           // offset - amplitude tanh(alpha (x - center))
  polynomial_in_tanh,  // sum_n c_n tanh(alpha (x - center))^n
};

std::string_view to_string(FunctionKind kind);
FunctionKind function_kind_from_string(std::string_view name);

/// Closed-form real-analytic function of one variable, evaluable on the real line
/// and at complex arguments together with exact first and second derivatives.
///
/// Used for the potentials V1, V2 and the coupling coefficients r0, r1. For
/// `shifted_sech_well` the `depth` parameter defaults to
/// asymptote * cosh^2(alpha * center), which puts the zero of the well at x = 0.
class AnalyticFunction {
 public:
  AnalyticFunction() = default;
  AnalyticFunction(FunctionKind kind, std::map<std::string, double> params, std::string name = {});

  static AnalyticFunction constant(double value, std::string name = {});
  static AnalyticFunction polynomial(std::vector<double> coefficients, std::string name = {});

  FunctionKind kind() const noexcept { return kind_; }
  const std::map<std::string, double>& params() const noexcept { return params_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  Jet<double> jet(double x) const;
  Jet<cplx> jet(cplx z) const;
  double operator()(double x) const { return jet(x).value; }
  cplx operator()(cplx z) const { return jet(z).value; }

  /// f(z0 + step) - f(z0) without cancellation for small steps.
  cplx increment(cplx z0, cplx step) const;

  /// Limit as x -> sign * infinity along the real axis (may be +-inf for polynomials).
  double limit(int sign) const;

  /// True when the function is identically zero.
  bool is_zero() const;

 private:
  template <class T>
  Jet<T> evaluate(T z) const;

  FunctionKind kind_ = FunctionKind::constant;
  std::map<std::string, double> params_;
  std::string name_;
  // Resolved parameters.
  std::vector<double> coeffs_;
  double a_ = 0.0, b_ = 0.0, alpha_ = 1.0, center_ = 0.0;
};

using PotentialSpec = AnalyticFunction;

}  // namespace crossres
