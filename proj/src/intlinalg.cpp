#include "hse/intlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hse {

namespace {

// r_i <- r_i - q r_k on a row-major matrix, columns from `from` on.
void row_sub(IntMatrix& M, std::size_t i, std::size_t k, const mpz_class& q,
             std::size_t from = 0) {
  for (std::size_t j = from; j < M.cols(); ++j)
    if (M(k, j) != 0) M(i, j) -= q * M(k, j);
}

void col_sub(IntMatrix& M, std::size_t i, std::size_t k, const mpz_class& q) {
  for (std::size_t r = 0; r < M.rows(); ++r)
    if (M(r, k) != 0) M(r, i) -= q * M(r, k);
}

void row_neg(IntMatrix& M, std::size_t i) {
  for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = -M(i, j);
}

mpz_class fdiv(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HNFResult hnf(const IntMatrix& M, bool with_transform) {
  HNFResult res;
  res.H = M;
  IntMatrix& H = res.H;
  const std::size_t m = M.rows(), n = M.cols();
  if (with_transform) res.U = IntMatrix::identity(m);
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    // Euclid on column j among rows r.. using the smallest nonzero entry.
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (H(i, j) == 0) continue;
        if (best == m || abs(H(i, j)) < abs(H(best, j))) best = i;
      }
      if (best == m) break;
      H.swap_rows(r, best);
      if (with_transform) res.U.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, j) == 0) continue;
        mpz_class q = fdiv(H(i, j), H(r, j));
        row_sub(H, i, r, q, j);
        if (with_transform) row_sub(res.U, i, r, q);
        if (H(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, j) == 0) continue;
    if (H(r, j) < 0) {
      row_neg(H, r);
      if (with_transform) row_neg(res.U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (H(i, j) == 0) continue;
      mpz_class q = fdiv(H(i, j), H(r, j));
      if (q == 0) continue;
      row_sub(H, i, r, q, j);
      if (with_transform) row_sub(res.U, i, r, q);
    }
    res.pivots.push_back(j);
    ++r;
  }
  res.rank = r;
  return res;
}

IntMatrix hnf_basis(const IntMatrix& M) {
  HNFResult h = hnf(M, false);
  return h.H.block(0, 0, h.rank, M.cols());
}

SNFResult snf(const IntMatrix& M) {
  SNFResult res;
  const std::size_t m = M.rows(), n = M.cols();
  res.S = M;
  res.U = IntMatrix::identity(m);
  res.V = IntMatrix::identity(n);
  res.Vinv = IntMatrix::identity(n);
  IntMatrix& S = res.S;
  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (S(i, j) != 0 && (bi == m || abs(S(i, j)) < abs(S(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) break;
      S.swap_rows(t, bi);
      res.U.swap_rows(t, bi);
      S.swap_cols(t, bj);
      res.V.swap_cols(t, bj);
      res.Vinv.swap_rows(t, bj);
      bool done = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        mpz_class q = fdiv(S(i, t), S(t, t));
        row_sub(S, i, t, q);
        row_sub(res.U, i, t, q);
        if (S(i, t) != 0) done = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        mpz_class q = fdiv(S(t, j), S(t, t));
        col_sub(S, j, t, q);
        col_sub(res.V, j, t, q);
        // V' = V E with E = I - q e_t e_j^T, so V'^{-1} = E^{-1} V^{-1}:
        // row t of Vinv gains q times row j.
        row_sub(res.Vinv, t, j, -q);
        if (S(t, j) != 0) done = false;
      }
      if (!done) continue;
      // Divisibility: fold a violating row into row t and retry.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_sub(S, t, bad, -1);
      row_sub(res.U, t, bad, -1);
    }
    if (S(t, t) < 0) {
      row_neg(S, t);
      row_neg(res.U, t);
    }
  }
  res.diag.resize(k);
  for (std::size_t t = 0; t < k; ++t) res.diag[t] = S(t, t);
  return res;
}

IntMatrix left_kernel(const IntMatrix& M) {
  HNFResult h = hnf(M, true);
  IntMatrix K(M.rows() - h.rank, M.rows());
  for (std::size_t i = h.rank; i < M.rows(); ++i) K.set_row(i - h.rank, h.U.row(i));
  if (K.rows() == 0) return IntMatrix(0, M.rows());
  return hnf_basis(K);
}

IntMatrix right_kernel(const IntMatrix& M) { return left_kernel(M.transpose()); }

std::optional<IntVec> solve_left(const IntMatrix& A, const IntVec& b) {
  if (b.size() != A.cols()) throw std::invalid_argument("solve_left: shape");
  HNFResult h = hnf(A, true);
  IntVec rem = b;
  IntVec y(h.rank, 0);
  for (std::size_t r = 0; r < h.rank; ++r) {
    std::size_t j = h.pivots[r];
    // Entries left of the pivot must already be cleared.
    for (std::size_t c = (r == 0 ? 0 : h.pivots[r - 1] + 1); c < j; ++c)
      if (rem[c] != 0) return std::nullopt;
    if (rem[j] % h.H(r, j) != 0) return std::nullopt;
    y[r] = rem[j] / h.H(r, j);
    if (y[r] != 0)
      for (std::size_t c = j; c < A.cols(); ++c) rem[c] -= y[r] * h.H(r, c);
  }
  for (const auto& v : rem)
    if (v != 0) return std::nullopt;
  IntVec x(A.rows(), 0);
  for (std::size_t r = 0; r < h.rank; ++r) {
    if (y[r] == 0) continue;
    for (std::size_t i = 0; i < A.rows(); ++i) x[i] += y[r] * h.U(r, i);
  }
  return x;
}

mpz_class det(IntMatrix M) {
  const std::size_t n = M.rows();
  if (n != M.cols()) throw std::invalid_argument("det: not square");
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        M(i, j) = t;
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

mpz_class AbelianInvariants::torsion_order() const {
  mpz_class o = 1;
  for (const auto& t : torsion) o *= t;
  return o;
}

AbelianInvariants cokernel_invariants(const IntMatrix& R, std::size_t n) {
  AbelianInvariants inv;
  if (R.rows() == 0) {
    inv.free_rank = n;
    return inv;
  }
  if (R.cols() != n) throw std::invalid_argument("cokernel_invariants: width");
  // SNF of the (small) HNF basis keeps the working matrix square-ish.
  IntMatrix B = hnf_basis(R);
  std::size_t nz = 0;
  if (B.rows() > 0) {
    SNFResult s = snf(B);
    for (const auto& d : s.diag) {
      if (d == 0) continue;
      ++nz;
      if (d != 1) inv.torsion.push_back(d);
    }
  }
  inv.free_rank = n - nz;
  return inv;
}

mpz_class vec_content(const IntVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

}  // namespace hse
