#include "crossres/analytic_function.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

double require(const std::map<std::string, double>& p, const std::string& key, const std::string& who) {
  auto it = p.find(key);
  if (it == p.end()) throw ConfigError(who + ": missing parameter '" + key + "'");
  return it->second;
}

double optional(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

std::vector<double> collect_coefficients(const std::map<std::string, double>& p) {
  std::vector<double> c;
  for (const auto& [key, value] : p) {
    if (key.size() < 2 || key[0] != 'c') continue;
    std::size_t n = 0;
    try {
      n = std::stoul(key.substr(1));
    } catch (const std::exception&) {
      continue;
    }
    if (c.size() <= n) c.resize(n + 1, 0.0);
    c[n] = value;
  }
  if (c.empty()) c.push_back(0.0);
  return c;
}

bool finite(double v) { return std::isfinite(v); }
bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// tanh and sech^2 written through exp(-2|u|) so neither overflows for large |Re u|.
template <class T>
void tanh_sech2(T u, T& t, T& s) {
  const bool flip = std::real(u) < 0.0;
  const T w = flip ? -u : u;
  const T e = std::exp(-2.0 * w);
  const T denom = 1.0 + e;
  t = (1.0 - e) / denom;
  s = 4.0 * e / (denom * denom);
  if (flip) t = -t;
}

template <class T>
Jet<T> horner(const std::vector<double>& c, T x) {
  Jet<T> j{T(0.0), T(0.0), T(0.0)};
  for (std::size_t i = c.size(); i-- > 0;) {
    j.d2 = j.d2 * x + 2.0 * j.d1;
    j.d1 = j.d1 * x + j.value;
    j.value = j.value * x + c[i];
  }
  return j;
}

// tanh(y + d) - tanh(y) = sinh(d) / (cosh(y + d) cosh y)
cplx tanh_increment(cplx y, cplx d) {
  const cplx direct = std::tanh(y + d) - std::tanh(y);
  if (std::abs(d) > 0.5) return direct;
  const cplx v = std::sinh(d) / (std::cosh(y + d) * std::cosh(y));
  return finite(v) ? v : direct;
}

// sum_n c_n (x^n - y^n), factoring out dx = x - y
cplx power_increment(const std::vector<double>& c, cplx x, cplx y, cplx dx) {
  cplx total = 0.0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    cplx sum = 0.0, xp = 1.0;
    cplx yp = std::pow(y, static_cast<int>(n - 1));
    const cplx yinv = y == 0.0 ? cplx(0.0) : 1.0 / y;
    for (std::size_t k = 0; k < n; ++k) {
      if (y == 0.0) {
        if (k == n - 1) sum += xp;
      } else {
        sum += xp * yp;
        yp *= yinv;
      }
      xp *= x;
    }
    total += c[n] * sum;
  }
  return total * dx;
}

}  // namespace

std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::constant: return "constant";
    case FunctionKind::polynomial: return "polynomial";
    case FunctionKind::shifted_sech_well: return "shifted-sech-well";
    case FunctionKind::tanh_step: return "tanh-step";
    case FunctionKind::polynomial_in_tanh: return "polynomial-in-tanh";
  }
  return "?";
}

FunctionKind function_kind_from_string(std::string_view name) {
  for (auto k : {FunctionKind::constant, FunctionKind::polynomial, FunctionKind::shifted_sech_well,
                 FunctionKind::tanh_step, FunctionKind::polynomial_in_tanh}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown function kind '" + std::string(name) + "'");
}

AnalyticFunction::AnalyticFunction(FunctionKind kind, std::map<std::string, double> params, std::string name)
    : kind_(kind), params_(std::move(params)), name_(std::move(name)) {
  const std::string who = name_.empty() ? std::string(to_string(kind_)) : name_;
  switch (kind_) {
    case FunctionKind::constant:
      a_ = require(params_, "value", who);
      break;
    case FunctionKind::polynomial:
      coeffs_ = collect_coefficients(params_);
      break;
    case FunctionKind::shifted_sech_well: {
      b_ = require(params_, "asymptote", who);
      alpha_ = optional(params_, "alpha", 1.0);
      center_ = optional(params_, "center", 0.0);
      const double ch = std::cosh(alpha_ * center_);
      a_ = optional(params_, "depth", b_ * ch * ch);
      break;
    }
    case FunctionKind::tanh_step:
      a_ = require(params_, "amplitude", who);
      alpha_ = optional(params_, "alpha", 1.0);
      center_ = optional(params_, "center", 0.0);
      b_ = optional(params_, "offset", 0.0);
      break;
    case FunctionKind::polynomial_in_tanh:
      coeffs_ = collect_coefficients(params_);
      alpha_ = optional(params_, "alpha", 1.0);
      center_ = optional(params_, "center", 0.0);
      break;
  }
  if (alpha_ == 0.0) throw ConfigError(who + ": alpha must be nonzero");
}

AnalyticFunction AnalyticFunction::constant(double value, std::string name) {
  return AnalyticFunction(FunctionKind::constant, {{"value", value}}, std::move(name));
}

AnalyticFunction AnalyticFunction::polynomial(std::vector<double> coefficients, std::string name) {
  std::map<std::string, double> p;
  for (std::size_t i = 0; i < coefficients.size(); ++i) p["c" + std::to_string(i)] = coefficients[i];
  return AnalyticFunction(FunctionKind::polynomial, std::move(p), std::move(name));
}

template <class T>
Jet<T> AnalyticFunction::evaluate(T z) const {
  switch (kind_) {
    case FunctionKind::constant:
      return {T(a_), T(0.0), T(0.0)};
    case FunctionKind::polynomial:
      return horner(coeffs_, z);
    case FunctionKind::shifted_sech_well: {
      T t, s;
      tanh_sech2(alpha_ * (z - center_), t, s);
      // d/du sech^2 = -2 s t, d2/du2 sech^2 = 4 s t^2 - 2 s^2
      return {b_ - a_ * s, 2.0 * a_ * alpha_ * s * t, -a_ * alpha_ * alpha_ * (4.0 * s * t * t - 2.0 * s * s)};
    }
    case FunctionKind::tanh_step: {
      T t, s;
      tanh_sech2(alpha_ * (z - center_), t, s);
      return {b_ - a_ * t, -a_ * alpha_ * s, 2.0 * a_ * alpha_ * alpha_ * s * t};
    }
    case FunctionKind::polynomial_in_tanh: {
      T t, s;
      tanh_sech2(alpha_ * (z - center_), t, s);
      const Jet<T> p = horner(coeffs_, t);
      const T dt = alpha_ * s;
      const T d2t = -2.0 * alpha_ * alpha_ * t * s;
      return {p.value, p.d1 * dt, p.d2 * dt * dt + p.d1 * d2t};
    }
  }
  return {};
}

Jet<double> AnalyticFunction::jet(double x) const {
  Jet<double> j = evaluate(x);
  if (!finite(j.value) || !finite(j.d1) || !finite(j.d2)) {
    std::ostringstream os;
    os << "non-finite evaluation of " << (name_.empty() ? std::string(to_string(kind_)) : name_) << " at x=" << x;
    throw EvaluationError(os.str());
  }
  return j;
}

Jet<cplx> AnalyticFunction::jet(cplx z) const {
  Jet<cplx> j = evaluate(z);
  if (!finite(j.value) || !finite(j.d1) || !finite(j.d2)) {
    std::ostringstream os;
    os << "non-finite evaluation of " << (name_.empty() ? std::string(to_string(kind_)) : name_) << " at x=" << z;
    throw EvaluationError(os.str());
  }
  return j;
}

cplx AnalyticFunction::increment(cplx z0, cplx step) const {
  const cplx z = z0 + step;
  switch (kind_) {
    case FunctionKind::constant:
      return 0.0;
    case FunctionKind::polynomial:
      return power_increment(coeffs_, z, z0, step);
    case FunctionKind::shifted_sech_well: {
      // sech^2 u - sech^2 v = -(tanh u - tanh v)(tanh u + tanh v)
      const cplx v = alpha_ * (z0 - center_), d = alpha_ * step;
      return a_ * tanh_increment(v, d) * (std::tanh(v + d) + std::tanh(v));
    }
    case FunctionKind::tanh_step:
      return -a_ * tanh_increment(alpha_ * (z0 - center_), alpha_ * step);
    case FunctionKind::polynomial_in_tanh: {
      const cplx v = alpha_ * (z0 - center_), d = alpha_ * step;
      return power_increment(coeffs_, std::tanh(v + d), std::tanh(v), tanh_increment(v, d));
    }
  }
  return 0.0;
}

double AnalyticFunction::limit(int sign) const {
  const double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case FunctionKind::constant:
      return a_;
    case FunctionKind::polynomial: {
      std::size_t deg = coeffs_.size();
      while (deg > 1 && coeffs_[deg - 1] == 0.0) --deg;
      if (deg == 1) return coeffs_[0];
      const double lead = coeffs_[deg - 1];
      const bool odd = (deg - 1) % 2 == 1;
      const double s = (odd && sign < 0) ? -lead : lead;
      return s > 0 ? inf : -inf;
    }
    case FunctionKind::shifted_sech_well:
      return b_;
    case FunctionKind::tanh_step: {
      const double t = (alpha_ > 0) == (sign > 0) ? 1.0 : -1.0;
      return b_ - a_ * t;
    }
    case FunctionKind::polynomial_in_tanh: {
      const double t = (alpha_ > 0) == (sign > 0) ? 1.0 : -1.0;
      return horner(coeffs_, t).value;
    }
  }
  return 0.0;
}

bool AnalyticFunction::is_zero() const {
  switch (kind_) {
    case FunctionKind::constant:
      return a_ == 0.0;
    case FunctionKind::polynomial:
    case FunctionKind::polynomial_in_tanh:
      for (double c : coeffs_)
        if (c != 0.0) return false;
      return true;
    case FunctionKind::shifted_sech_well:
      return a_ == 0.0 && b_ == 0.0;
    case FunctionKind::tanh_step:
      return a_ == 0.0 && b_ == 0.0;
  }
  return false;
}

}  // namespace crossres
