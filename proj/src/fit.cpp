#include "crossres/fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crossres {

namespace {

constexpr double kFloor = 1e-13;

struct Series {
  std::vector<double> h, r;
};

}  // namespace

SlopeFit fit_power_law(const std::vector<double>& h, const std::vector<double>& r) {
  SlopeFit fit;
  const std::size_t n = std::min(h.size(), r.size());
  fit.points = static_cast<int>(n);
  if (n < 2) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]), y = std::log(r[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.valid = true;
  return fit;
}

ConvergenceFit convergence_fit(const std::vector<ComparisonRow>& rows, OracleMethod method) {
  ConvergenceFit out;
  std::map<double, double, std::greater<>> env_re, env_im;
  std::map<int, Series> k_re, k_im;
  int dropped = 0;
  for (const ComparisonRow& row : rows) {
    if (row.method != method) continue;
    out.ratios.push_back({row.h, row.k, row.C, -row.oracle.imag() / (row.h * row.h)});
    if (row.res_re >= kFloor) {
      env_re[row.h] = std::max(env_re[row.h], row.res_re);
      k_re[row.k].h.push_back(row.h);
      k_re[row.k].r.push_back(row.res_re);
    } else {
      ++dropped;
    }
    if (row.res_im >= kFloor) {
      env_im[row.h] = std::max(env_im[row.h], row.res_im);
      k_im[row.k].h.push_back(row.h);
      k_im[row.k].r.push_back(row.res_im);
    } else {
      ++dropped;
    }
  }
  if (dropped > 0) {
    std::ostringstream os;
    os << dropped << " residual(s) below " << kFloor << " left out of the fits";
    out.notes.push_back(os.str());
  }

  auto pooled = [&](const std::map<double, double, std::greater<>>& env, const char* what) {
    Series s;
    for (const auto& [h, r] : env) {
      s.h.push_back(h);
      s.r.push_back(r);
    }
    if (s.h.size() < 3) {
      out.notes.push_back(std::string(what) + ": fewer than three h values with usable residuals; no slope");
      return SlopeFit{};
    }
    return fit_power_law(s.h, s.r);
  };
  out.re = pooled(env_re, "re");
  out.im = pooled(env_im, "im");
  for (const auto& [k, s] : k_re)
    if (s.h.size() >= 3) out.per_k_re[k] = fit_power_law(s.h, s.r);
  for (const auto& [k, s] : k_im)
    if (s.h.size() >= 3) out.per_k_im[k] = fit_power_law(s.h, s.r);
  return out;
}

}  // namespace crossres
