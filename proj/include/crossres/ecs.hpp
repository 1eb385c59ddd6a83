#pragma once

#include <complex>
#include <string>
#include <vector>

#include "crossres/banded.hpp"
#include "crossres/contour.hpp"
#include "crossres/model.hpp"

namespace crossres {

enum class OracleMethod { ecs, wronskian };

std::string to_string(OracleMethod m);
OracleMethod oracle_method_from_string(const std::string& name);

struct GridMeta {
  double x_min = 0.0;
  double x_max = 0.0;
  int N = 0;  // interior nodes per channel
  double dx = 0.0;
  bool under_resolved = false;
  std::string warning;
};

/// The 2x2 system along the contour on a uniform grid, unknowns interleaved
/// (index 2 i + channel), fourth-order five-point stencils, Dirichlet at both ends.
struct DiscretizedOperator {
  GridMeta grid;
  BandMatrix matrix;
  double h = 0.0;
  double theta = 0.0;

  double node(int i) const { return grid.x_min + grid.dx * (i + 1); }
};

/// Computational interval for the ECS discretisation at this h: wide enough that every
/// solution decaying into the classically forbidden regions (and along the rotated tail)
/// is attenuated by e^{-30} at the Dirichlet ends, clipped to problem.box.
Box ecs_box(const ProblemSpec& problem, const DeformedContour& contour, double h);

DiscretizedOperator discretize(const ProblemSpec& problem, const DeformedContour& contour, int N, double h);
DiscretizedOperator discretize(const ProblemSpec& problem, const DeformedContour& contour, int N, double h,
                               const Box& box);

struct OracleResonance {
  cplx E;
  double residual = 0.0;  // ||(M - E) v|| / ||v||, or |W| at the root for shooting
  OracleMethod method = OracleMethod::ecs;
  double theta_used = 0.0;
  GridMeta grid_meta;
  bool converged = true;
};

struct EigenOptions {
  int block = 8;
  int max_iterations = 400;
  double residual_tol = 1e-8;
  unsigned long long seed = 0x5eed5eedULL;
};

/// All eigenvalues of op.matrix within `radius` of `center`, by shift-invert subspace
/// iteration around `center` followed by inverse-iteration refinement of each one.
/// The subspace grows until at least two Ritz values fall outside the disc, so nothing
/// inside is missed. Results are sorted by real part.
std::vector<OracleResonance> resonances_in_window(const DiscretizedOperator& op, cplx center, double radius,
                                                  const EigenOptions& options = {});

}  // namespace crossres
