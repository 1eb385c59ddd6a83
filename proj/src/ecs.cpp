#include "crossres/ecs.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

constexpr double kDecayTarget = 30.0;  // e^{-30} attenuation at the Dirichlet ends

// Five-point stencils, offsets -2..2.
constexpr double kSecond[5] = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0};
constexpr double kFirst[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};

// Coordinate where int sqrt(max(V - E, 0)) reaches `target`, marching from `start` in `dir`.
double forbidden_reach(const PotentialSpec& V, double E, double start, double dir, double target, double limit) {
  const double step = 0.01;
  double acc = 0.0, x = start;
  while (acc < target && dir * (limit - x) > 0.0) {
    const double mid = x + 0.5 * dir * step;
    acc += std::sqrt(std::max(V(mid) - E, 0.0)) * step;
    x += dir * step;
  }
  return x;
}

double tail_reach(const ProblemSpec& problem, const DeformedContour& contour, double E, double target, double limit) {
  const double step = 0.01;
  double acc = 0.0, x = contour.x_infty();
  while ((acc < target || x < contour.ramp_end()) && x < limit) {
    const double mid = x + 0.5 * step;
    acc += (std::sqrt(cplx(E) - problem.V2(contour.F(mid))) * contour.dF(mid)).imag() * step;
    x += step;
  }
  return x;
}

Eigen::MatrixXcd orthonormal(const Eigen::MatrixXcd& v) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(v.rows(), v.cols());
}

Eigen::MatrixXcd random_block(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

// Factors (M - shift); on an exactly singular pivot the shift is nudged.
cplx factor_with_retry(BandLU& lu, const BandMatrix& m, cplx shift) {
  const double nudge = 1e-10 * std::max(1.0, std::abs(shift));
  for (int attempt = 0; attempt < 8; ++attempt) {
    const cplx s = shift + nudge * attempt * std::polar(1.0, 0.7 * attempt);
    if (lu.factor(m, s)) return s;
  }
  throw ConvergenceError("banded LU breaks down at every perturbed shift", std::abs(shift));
}

struct Refined {
  cplx E;
  double residual;
};

Refined refine(const BandMatrix& m, cplx guess, Eigen::VectorXcd x, double tol) {
  BandLU lu;
  factor_with_retry(lu, m, guess);
  cplx lambda = guess;
  double res = INFINITY;
  for (int it = 0; it < 30; ++it) {
    lu.solve(x);
    x.normalize();
    const Eigen::VectorXcd mx = m.multiply(x);
    lambda = x.dot(mx);  // x^H M x
    const double r = (mx - lambda * x).norm();
    const bool stalled = r > 0.5 * res;
    res = std::min(res, r);
    if (r < 1e-3 * tol || (stalled && r < tol)) break;
  }
  return {lambda, res};
}

}  // namespace

std::string to_string(OracleMethod m) { return m == OracleMethod::ecs ? "ecs" : "wronskian"; }

OracleMethod oracle_method_from_string(const std::string& name) {
  if (name == "ecs") return OracleMethod::ecs;
  if (name == "wronskian") return OracleMethod::wronskian;
  throw ConfigError("unknown oracle method '" + name + "'");
}

Box ecs_box(const ProblemSpec& problem, const DeformedContour& contour, double h) {
  if (!(h > 0.0)) throw DomainError("h must be positive");
  const double target = kDecayTarget * h;
  const double E_hi = problem.E0 + problem.delta0;
  const double E_lo = problem.E0 - problem.delta0;
  const TurningPoints tp = turning_points(problem, E_hi);
  const double margin = 0.25;

  const double left1 = forbidden_reach(problem.V1, E_hi, tp.a.real(), -1.0, target, problem.box.x_min);
  const double left2 = forbidden_reach(problem.V2, E_hi, tp.b.real(), -1.0, target, problem.box.x_min);
  const double right1 = forbidden_reach(problem.V1, E_hi, tp.c.real(), 1.0, target, problem.box.x_max);
  const double right2 = tail_reach(problem, contour, E_lo, target, problem.box.x_max);

  Box box;
  box.x_min = std::max(problem.box.x_min, std::min(left1, left2) - margin);
  box.x_max = std::min(problem.box.x_max, std::max({right1, right2, contour.ramp_end()}) + margin);
  return box;
}

DiscretizedOperator discretize(const ProblemSpec& problem, const DeformedContour& contour, int N, double h) {
  return discretize(problem, contour, N, h, ecs_box(problem, contour, h));
}

DiscretizedOperator discretize(const ProblemSpec& problem, const DeformedContour& contour, int N, double h,
                               const Box& box) {
  if (N < 16) throw DomainError("discretize needs at least 16 nodes per channel");
  if (!(h > 0.0)) throw DomainError("h must be positive");
  if (!(box.x_max > box.x_min)) throw DomainError("empty computational box");

  DiscretizedOperator op;
  op.h = h;
  op.theta = contour.theta();
  op.grid.x_min = box.x_min;
  op.grid.x_max = box.x_max;
  op.grid.N = N;
  op.grid.dx = (box.x_max - box.x_min) / (N + 1);
  const double length = box.x_max - box.x_min;
  if (h / std::sqrt(problem.E0) < 8.0 * length / N) {
    op.grid.under_resolved = true;
    std::ostringstream os;
    os << "grid under-resolves the wavelength: h/sqrt(E0)=" << h / std::sqrt(problem.E0) << " < 8 L/N=" << 8.0 * length / N;
    op.grid.warning = os.str();
  }

  const std::size_t n = 2 * static_cast<std::size_t>(N);
  op.matrix = BandMatrix(n, 5, 5);
  const double dx = op.grid.dx;
  const double h2 = h * h;
  const bool coupled = !problem.coupling.degenerate();

  for (int i = 0; i < N; ++i) {
    const double x = op.node(i);
    const cplx z = contour.F(x);
    const cplx inv_dF = 1.0 / contour.dF(x);
    const cplx g = inv_dF * inv_dF;
    const cplx q = contour.d2F(x) * inv_dF * inv_dF * inv_dF;
    const cplx v1 = problem.V1(z), v2 = problem.V2(z);
    const Jet<cplx> r1 = problem.coupling.r1.jet(z);
    const cplx r0 = problem.coupling.r0(z);
    const std::size_t r_one = 2 * static_cast<std::size_t>(i);
    const std::size_t r_two = r_one + 1;

    for (int d = -2; d <= 2; ++d) {
      const int j = i + d;
      if (j < 0 || j >= N) continue;
      const std::size_t c_one = 2 * static_cast<std::size_t>(j);
      const std::size_t c_two = c_one + 1;
      const cplx kinetic = -h2 * (g * (kSecond[d + 2] / (dx * dx)) - q * (kFirst[d + 2] / dx));
      op.matrix(r_one, c_one) += kinetic;
      op.matrix(r_two, c_two) += kinetic;
      if (coupled && kFirst[d + 2] != 0.0) {
        const cplx drift = h2 * r1.value * inv_dF * (kFirst[d + 2] / dx);
        op.matrix(r_one, c_two) += drift;   // h^2 r1 u2' in the first row
        op.matrix(r_two, c_one) -= drift;   // -h^2 r1 u1' in the second row
      }
    }
    op.matrix(r_one, r_one) += v1;
    op.matrix(r_two, r_two) += v2;
    if (coupled) {
      op.matrix(r_one, r_two) += h * r0;
      op.matrix(r_two, r_one) += h * r0 - h2 * r1.d1;
    }
  }
  return op;
}

std::vector<OracleResonance> resonances_in_window(const DiscretizedOperator& op, cplx center, double radius,
                                                  const EigenOptions& options) {
  const BandMatrix& m = op.matrix;
  const Eigen::Index n = static_cast<Eigen::Index>(m.size());
  std::vector<OracleResonance> out;
  if (!(radius > 0.0) || n == 0) return out;

  BandLU lu;
  const cplx shift = factor_with_retry(lu, m, center);

  // crude norm for the Ritz acceptance threshold
  double norm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = std::max<Eigen::Index>(0, i - 5); j <= std::min(n - 1, i + 5); ++j)
      row += std::abs(m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    norm = std::max(norm, row);
  }
  const double ritz_tol = 1e-10 * norm;

  std::mt19937_64 rng(options.seed);
  Eigen::Index p = std::min<Eigen::Index>(options.block, n);
  Eigen::MatrixXcd V = orthonormal(random_block(rng, n, p));

  struct Ritz {
    cplx value;
    Eigen::VectorXcd vector;
    double residual;
  };
  std::vector<Ritz> inside;
  bool done = false;
  for (int it = 0; it < options.max_iterations && !done; ++it) {
    lu.solve(V);
    V = orthonormal(V);
    if (it < 2) continue;

    const Eigen::MatrixXcd MV = m.multiply(V);
    const Eigen::MatrixXcd H = V.adjoint() * MV;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H);
    std::vector<Ritz> ritz;
    for (Eigen::Index k = 0; k < p; ++k) {
      const cplx theta = es.eigenvalues()(k);
      const Eigen::VectorXcd s = es.eigenvectors().col(k).normalized();
      const Eigen::VectorXcd y = V * s;
      ritz.push_back({theta, y, (MV * s - theta * y).norm()});
    }
    std::sort(ritz.begin(), ritz.end(),
              [&](const Ritz& a, const Ritz& b) { return std::abs(a.value - shift) < std::abs(b.value - shift); });

    Eigen::Index count = 0;
    for (const Ritz& r : ritz) count += std::abs(r.value - center) <= radius;
    if (count > p - 2 && p < n) {
      // Disc may hold more eigenvalues than the block can see.
      const Eigen::Index grow = std::min(p, n - p);
      Eigen::MatrixXcd wider(n, p + grow);
      wider << V, random_block(rng, n, grow);
      V = orthonormal(wider);
      p += grow;
      continue;
    }
    bool converged = true;
    for (Eigen::Index k = 0; k < p; ++k) {
      const Ritz& r = ritz[static_cast<std::size_t>(k)];
      if (std::abs(r.value - center) <= radius) {
        converged = converged && r.residual < ritz_tol;
      } else {
        // the nearest eigenvalue outside the disc must be captured too
        converged = converged && r.residual < 1e-6 * norm;
        break;
      }
    }
    inside.clear();
    for (const Ritz& r : ritz)
      if (std::abs(r.value - center) <= radius) inside.push_back(r);
    done = converged;
  }

  for (const Ritz& r : inside) {
    const Refined ref = refine(m, r.value, r.vector, options.residual_tol);
    if (std::abs(ref.E - center) > radius) continue;
    OracleResonance res;
    res.E = ref.E;
    res.residual = ref.residual;
    res.method = OracleMethod::ecs;
    res.theta_used = op.theta;
    res.grid_meta = op.grid;
    res.converged = done && ref.residual < options.residual_tol;
    out.push_back(res);
  }

  std::sort(out.begin(), out.end(), [](const OracleResonance& a, const OracleResonance& b) {
    return a.E.real() != b.E.real() ? a.E.real() < b.E.real() : a.E.imag() < b.E.imag();
  });
  std::vector<OracleResonance> merged;
  for (const OracleResonance& r : out) {
    if (!merged.empty() && std::abs(merged.back().E - r.E) <= 1e-12) {
      if (r.residual < merged.back().residual) merged.back() = r;
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

}  // namespace crossres
