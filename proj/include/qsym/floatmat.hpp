#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qsym/matrix.hpp"

namespace qsym {

using cdouble = std::complex<double>;

/// Double-precision mirror of Matrix. Used only by the numeric cross-checks;
/// the exact layer never reads values back from here.
class CMat {
 public:
  CMat() : rows_(0), cols_(0) {}
  CMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static CMat identity(size_t n) {
    CMat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMat from_exact(const Matrix& m) {
    CMat c(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).to_complex();
    return c;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  cdouble& operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const cdouble& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  CMat dagger() const {
    CMat d(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) d(j, i) = std::conj((*this)(i, j));
    return d;
  }

  CMat transpose() const {
    CMat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  CMat conj() const {
    CMat c(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) c(i, j) = std::conj((*this)(i, j));
    return c;
  }

 private:
  size_t rows_, cols_;
  std::vector<cdouble> e_;
};

inline CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("cmat shape mismatch in *");
  CMat r(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k)
      for (size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

inline CMat operator-(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("cmat shape mismatch in -");
  CMat r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline double max_abs(const CMat& a) {
  double m = 0;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

inline double max_abs_diff(const CMat& a, const CMat& b) { return max_abs(a - b); }

/// Lower-triangular L with a = L L^dagger. Throws if a pivot drops below tol,
/// i.e. the input is numerically not positive-definite.
inline CMat cholesky(const CMat& a, double tol = 1e-12) {
  if (a.rows() != a.cols()) throw std::invalid_argument("cholesky of non-square matrix");
  size_t n = a.rows();
  CMat l(n, n);
  for (size_t j = 0; j < n; ++j) {
    cdouble diag = a(j, j);
    for (size_t k = 0; k < j; ++k) diag -= l(j, k) * std::conj(l(j, k));
    double d = diag.real();
    if (d < tol || std::abs(diag.imag()) > tol)
      throw std::domain_error("matrix is not positive-definite (cholesky pivot)");
    l(j, j) = std::sqrt(d);
    for (size_t i = j + 1; i < n; ++i) {
      cdouble v = a(i, j);
      for (size_t k = 0; k < j; ++k) v -= l(i, k) * std::conj(l(j, k));
      l(i, j) = v / l(j, j);
    }
  }
  return l;
}

inline CMat c_inverse(const CMat& a, double tol = 1e-12) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square cmat");
  size_t n = a.rows();
  CMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1.0;
  }
  for (size_t col = 0; col < n; ++col) {
    size_t p = col;
    for (size_t i = col + 1; i < n; ++i)
      if (std::abs(aug(i, col)) > std::abs(aug(p, col))) p = i;
    if (std::abs(aug(p, col)) < tol) throw std::domain_error("numerically singular cmat");
    if (p != col)
      for (size_t j = 0; j < 2 * n; ++j) std::swap(aug(p, j), aug(col, j));
    cdouble inv = 1.0 / aug(col, col);
    for (size_t j = 0; j < 2 * n; ++j) aug(col, j) *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      cdouble f = aug(i, col);
      if (f == 0.0) continue;
      for (size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(col, j);
    }
  }
  CMat r(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

}  // namespace qsym
