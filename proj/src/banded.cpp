#include "crossres/banded.hpp"

#include <algorithm>
#include <complex>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "crossres/errors.hpp"

namespace crossres {

BandMatrix::BandMatrix(std::size_t n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ab_(static_cast<std::size_t>(2 * kl + ku + 1) * n, cplx(0.0)) {}

bool BandMatrix::in_band(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) return false;
  const long d = static_cast<long>(i) - static_cast<long>(j);
  return d <= kl_ && -d <= ku_;
}

// Column-major band storage: A(i, j) lives at row kl + ku + i - j of column j.
cplx& BandMatrix::operator()(std::size_t i, std::size_t j) {
  if (!in_band(i, j)) throw DomainError("band matrix index outside the band");
  return ab_[static_cast<std::size_t>(kl_ + ku_) + i - j + j * static_cast<std::size_t>(leading_dimension())];
}

cplx BandMatrix::operator()(std::size_t i, std::size_t j) const {
  if (!in_band(i, j)) return 0.0;
  return ab_[static_cast<std::size_t>(kl_ + ku_) + i - j + j * static_cast<std::size_t>(leading_dimension())];
}

Eigen::VectorXcd BandMatrix::multiply(const Eigen::VectorXcd& x) const {
  Eigen::MatrixXcd m = x;
  return multiply(m).col(0);
}

Eigen::MatrixXcd BandMatrix::multiply(const Eigen::MatrixXcd& x) const {
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n_), x.cols());
  const std::size_t ld = static_cast<std::size_t>(leading_dimension());
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t i0 = j > static_cast<std::size_t>(ku_) ? j - ku_ : 0;
    const std::size_t i1 = std::min(n_ - 1, j + kl_);
    const cplx* col = ab_.data() + j * ld + kl_ + ku_ - j;
    for (std::size_t i = i0; i <= i1; ++i) {
      const cplx a = col[i];
      if (a == 0.0) continue;
      y.row(static_cast<Eigen::Index>(i)) += a * x.row(static_cast<Eigen::Index>(j));
    }
  }
  return y;
}

Eigen::MatrixXcd BandMatrix::dense() const {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i)
      if (in_band(i, j)) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j);
  return d;
}

bool BandLU::factor(const BandMatrix& a, cplx shift) {
  n_ = a.size();
  kl_ = a.lower();
  ku_ = a.upper();
  shift_ = shift;
  ab_ = a.storage();
  const std::size_t ld = static_cast<std::size_t>(a.leading_dimension());
  for (std::size_t j = 0; j < n_; ++j) ab_[j * ld + kl_ + ku_] -= shift;
  ipiv_.assign(n_, 0);
  const lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, static_cast<lapack_int>(n_), static_cast<lapack_int>(n_), kl_,
                                         ku_, ab_.data(), static_cast<lapack_int>(ld), ipiv_.data());
  if (info < 0) throw DomainError("zgbtrf: invalid argument");
  ok_ = info == 0;
  return ok_;
}

void BandLU::solve(Eigen::MatrixXcd& b) const {
  if (!ok_) throw DomainError("band LU used without a successful factorisation");
  if (static_cast<std::size_t>(b.rows()) != n_) throw DomainError("band LU: right-hand side has the wrong size");
  const lapack_int info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(n_), kl_, ku_,
                                         static_cast<lapack_int>(b.cols()), ab_.data(), 2 * kl_ + ku_ + 1,
                                         ipiv_.data(), b.data(), static_cast<lapack_int>(n_));
  if (info != 0) throw DomainError("zgbtrs failed");
}

void BandLU::solve(Eigen::VectorXcd& b) const {
  Eigen::MatrixXcd m = b;
  solve(m);
  b = m.col(0);
}

}  // namespace crossres
