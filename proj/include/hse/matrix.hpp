#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hse {

// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
  Matrix(std::size_t r, std::size_t c, const T& fill)
      : r_(r), c_(c), a_(r * c, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix zeros(std::size_t r, std::size_t c) { return Matrix(r, c, T(0)); }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_row(std::size_t i, const std::vector<T>& v) {
    for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
  }
  void append_row(const std::vector<T>& v) {
    if (r_ == 0 && c_ == 0) c_ = v.size();
    if (v.size() != c_) throw std::invalid_argument("append_row: width");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix b(idx.size(), c_);
    for (std::size_t i = 0; i < idx.size(); ++i) b.set_row(i, row(idx[i]));
    return b;
  }

  bool operator==(const Matrix& o) const {
    return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product: shape");
    Matrix p(r_, o.c_, T(0));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const T& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
      }
    return p;
  }
  Matrix operator+(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix sum: shape");
    Matrix s = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) s.a_[k] += o.a_[k];
    return s;
  }
  Matrix operator-(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix difference: shape");
    Matrix s = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) s.a_[k] -= o.a_[k];
    return s;
  }

  // Row vector times matrix.
  std::vector<T> left_apply(const std::vector<T>& v) const {
    if (v.size() != r_) throw std::invalid_argument("left_apply: shape");
    std::vector<T> out(c_, T(0));
    for (std::size_t i = 0; i < r_; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < c_; ++j) out[j] += v[i] * (*this)(i, j);
    }
    return out;
  }
  // Matrix times column vector.
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != c_) throw std::invalid_argument("apply: shape");
    std::vector<T> out(r_, T(0));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  const std::vector<T>& data() const { return a_; }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<mpz_class>;
using QMatrix = Matrix<mpq_class>;
using IntVec = std::vector<mpz_class>;
using QVec = std::vector<mpq_class>;

// Vertical concatenation; widths must agree (an empty matrix is neutral).
template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() == 0 && a.cols() == 0) return b;
  if (b.rows() == 0 && b.cols() == 0) return a;
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: width");
  Matrix<T> m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) m.set_row(i, a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) m.set_row(a.rows() + i, b.row(i));
  return m;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: height");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline QMatrix to_rational(const IntMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = mpq_class(m(i, j));
  return q;
}

}  // namespace hse
