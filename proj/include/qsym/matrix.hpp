#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsym/scalar.hpp"

namespace qsym {

/// Dense matrix over Q(i). All algorithms are fraction-free-in-spirit exact
/// Gaussian elimination; nothing here ever rounds.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Scalar::one();
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Scalar& operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const Scalar& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix conj() const {
    Matrix c(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j).conj();
    return c;
  }

  Matrix dagger() const { return conj().transpose(); }

  bool is_hermitian() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i).conj()) return false;
    return true;
  }

 private:
  size_t rows_, cols_;
  std::vector<Scalar> e_;
};

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch in +");
  Matrix r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch in -");
  Matrix r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in *");
  Matrix r(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

inline Matrix operator*(const Scalar& c, const Matrix& a) {
  Matrix r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
  return r;
}

/// Reduced row echelon form in place; returns the pivot columns.
/// Exact: pivots are the first nonzero entry in each column scan.
inline std::vector<size_t> rref(Matrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Scalar inv = Scalar::one() / m(row, col);
    for (size_t j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Scalar f = m(i, col);
      for (size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of { x : m x = 0 }, one column vector per free column.
inline std::vector<std::vector<Scalar>> kernel_basis(Matrix m) {
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(m.cols());
    v[free] = Scalar::one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Matrix mat_inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Scalar::one();
  }
  std::vector<size_t> pivots = rref(aug);
  // rref of [A|I] is [I|A^-1] exactly when all n pivots land in the left block.
  if (pivots.size() < n || pivots[n - 1] >= n) throw std::domain_error("singular matrix");
  Matrix inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline Scalar determinant(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  size_t n = m.rows();
  Scalar det = Scalar::one();
  for (size_t col = 0; col < n; ++col) {
    size_t p = col;
    while (p < n && m(p, col).is_zero()) ++p;
    if (p == n) return Scalar::zero();
    if (p != col) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    Scalar inv = Scalar::one() / m(col, col);
    for (size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      Scalar f = inv * m(i, col);
      for (size_t j = col; j < n; ++j) m(i, j) = m(i, j) - f * m(col, j);
    }
  }
  return det;
}

/// Leading principal minors det(m[0..k][0..k]), k = 1..n.
inline std::vector<Scalar> leading_principal_minors(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("minors of non-square matrix");
  std::vector<Scalar> minors;
  for (size_t k = 1; k <= m.rows(); ++k) {
    Matrix sub(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
    minors.push_back(determinant(std::move(sub)));
  }
  return minors;
}

/// Hermitian positive-definiteness by Sylvester's criterion: all leading
/// principal minors are real and strictly positive. Exact, no square roots.
inline bool is_hermitian_positive(const Matrix& m) {
  if (!m.is_hermitian()) return false;
  for (const Scalar& d : leading_principal_minors(m))
    if (!d.is_real() || !(d.re > 0)) return false;
  return true;
}

}  // namespace qsym
