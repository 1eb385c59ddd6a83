#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "crossres/analytic_function.hpp"

namespace crossres {

/// Square complex band matrix in LAPACK band storage with room for the LU fill-in
/// (leading dimension 2 kl + ku + 1).
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(std::size_t n, int kl, int ku);

  std::size_t size() const noexcept { return n_; }
  int lower() const noexcept { return kl_; }
  int upper() const noexcept { return ku_; }
  int leading_dimension() const noexcept { return 2 * kl_ + ku_ + 1; }

  bool in_band(std::size_t i, std::size_t j) const;
  /// Entry (i, j); (i, j) must lie inside the band.
  cplx& operator()(std::size_t i, std::size_t j);
  cplx operator()(std::size_t i, std::size_t j) const;

  Eigen::VectorXcd multiply(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXcd multiply(const Eigen::MatrixXcd& x) const;

  /// Dense copy (tests and small problems only).
  Eigen::MatrixXcd dense() const;

  const std::vector<cplx>& storage() const noexcept { return ab_; }

 private:
  std::size_t n_ = 0;
  int kl_ = 0;
  int ku_ = 0;
  std::vector<cplx> ab_;
};

/// LU factorisation of (A - shift I), via LAPACK zgbtrf.
class BandLU {
 public:
  /// Returns false (and stays unusable) when the factor has an exactly zero pivot.
  bool factor(const BandMatrix& a, cplx shift);
  bool ok() const noexcept { return ok_; }
  cplx shift() const noexcept { return shift_; }

  /// Overwrites b with (A - shift)^{-1} b.
  void solve(Eigen::MatrixXcd& b) const;
  void solve(Eigen::VectorXcd& b) const;

 private:
  std::size_t n_ = 0;
  int kl_ = 0;
  int ku_ = 0;
  cplx shift_;
  bool ok_ = false;
  std::vector<cplx> ab_;
  std::vector<int> ipiv_;
};

}  // namespace crossres
