#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hse/cyclotomic.hpp"
#include "hse/matrix.hpp"

namespace hse {

using KMatrix = Matrix<Cyc>;
using KVec = std::vector<Cyc>;

// Reduced row echelon form over Q or Q(zeta_n) by Gauss-Jordan elimination.
template <class F>
struct RREF {
  Matrix<F> R;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank() const { return pivots.size(); }
};

template <class F>
RREF<F> rref(Matrix<F> A) {
  RREF<F> out;
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    std::size_t p = r;
    while (p < m && A(p, j) == F(0)) ++p;
    if (p == m) continue;
    A.swap_rows(r, p);
    F inv = F(1) / A(r, j);
    for (std::size_t k = j; k < n; ++k) A(r, k) = A(r, k) * inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || A(i, j) == F(0)) continue;
      F f = A(i, j);
      for (std::size_t k = j; k < n; ++k)
        if (!(A(r, k) == F(0))) A(i, k) -= f * A(r, k);
    }
    out.pivots.push_back(j);
    ++r;
  }
  out.R = std::move(A);
  return out;
}

template <class F>
std::size_t rank(const Matrix<F>& A) {
  return rref(A).rank();
}

// Basis of {v : A v = 0}: one vector per free column, with a 1 in that
// column and zeros in the other free columns.
template <class F>
std::vector<std::vector<F>> kernel(const Matrix<F>& A) {
  RREF<F> e = rref(A);
  const std::size_t n = A.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<F> v(n, F(0));
    v[f] = F(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.R(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Some solution of A x = b (free variables set to zero).
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& A, const std::vector<F>& b) {
  if (b.size() != A.rows()) throw std::invalid_argument("solve: shape");
  Matrix<F> Ab(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) Ab(i, j) = A(i, j);
    Ab(i, A.cols()) = b[i];
  }
  RREF<F> e = rref(Ab);
  if (!e.pivots.empty() && e.pivots.back() == A.cols()) return std::nullopt;
  std::vector<F> x(A.cols(), F(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.R(r, A.cols());
  return x;
}

template <class F>
F det(Matrix<F> A) {
  const std::size_t n = A.rows();
  if (n != A.cols()) throw std::invalid_argument("det: not square");
  F d(1);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t p = j;
    while (p < n && A(p, j) == F(0)) ++p;
    if (p == n) return F(0);
    if (p != j) {
      A.swap_rows(p, j);
      d = -d;
    }
    d = d * A(j, j);
    F inv = F(1) / A(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      if (A(i, j) == F(0)) continue;
      F f = A(i, j) * inv;
      for (std::size_t k = j; k < n; ++k)
        if (!(A(j, k) == F(0))) A(i, k) -= f * A(j, k);
    }
  }
  return d;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& A) {
  const std::size_t n = A.rows();
  if (n != A.cols()) throw std::invalid_argument("inverse: not square");
  RREF<F> e = rref(hstack(A, Matrix<F>::identity(n)));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.R.block(0, n, n, n);
}

// Columns of a matrix, and a matrix from column vectors.
template <class F>
Matrix<F> from_columns(const std::vector<std::vector<F>>& cols, std::size_t height) {
  Matrix<F> M(height, cols.size(), F(0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < height; ++i) M(i, j) = cols[j][i];
  return M;
}

// Greedy complement: standard basis vectors e_i (in index order) extending
// the column span of A to the whole space. Returns their indices.
template <class F>
std::vector<std::size_t> standard_complement(const Matrix<F>& A) {
  const std::size_t n = A.rows();
  Matrix<F> cur = A;
  std::size_t r = rank(cur);
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < n && r < n; ++i) {
    Matrix<F> trial = hstack(cur, Matrix<F>(n, 1, F(0)));
    trial(i, cur.cols()) = F(1);
    std::size_t rt = rank(trial);
    if (rt > r) {
      cur = trial;
      r = rt;
      picked.push_back(i);
    }
  }
  return picked;
}

}  // namespace hse
