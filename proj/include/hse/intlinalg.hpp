#pragma once

#include <optional>
#include <vector>

#include "hse/matrix.hpp"

namespace hse {

// Row Hermite normal form H = U * M. Pivots are positive, entries above a
// pivot lie in [0, pivot), and the rank nonzero rows come first.
struct HNFResult {
  IntMatrix H;
  IntMatrix U;  // unimodular, rows x rows; empty when not requested
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
HNFResult hnf(const IntMatrix& M, bool with_transform = true);

// Nonzero rows of the HNF.
IntMatrix hnf_basis(const IntMatrix& M);

// Smith normal form S = U * M * V with diag(S) = (s_1 | s_2 | ...) and s_i >= 0.
struct SNFResult {
  IntMatrix S, U, V, Vinv;
  std::vector<mpz_class> diag;  // min(rows, cols) entries
};
SNFResult snf(const IntMatrix& M);

// Basis (in HNF) of {x : x M = 0}.
IntMatrix left_kernel(const IntMatrix& M);
// Basis, as rows, of {v : M v = 0}.
IntMatrix right_kernel(const IntMatrix& M);

// Some integer x with x * A = b, or nullopt if b is not in the row span.
std::optional<IntVec> solve_left(const IntMatrix& A, const IntVec& b);

// Determinant by fraction-free elimination (Bareiss).
mpz_class det(IntMatrix M);

// Invariants of a finitely generated abelian group Z^n / rowspan(R):
// torsion invariants (each > 1, divisibility chain) and free rank.
struct AbelianInvariants {
  std::vector<mpz_class> torsion;
  std::size_t free_rank = 0;
  mpz_class torsion_order() const;
  bool is_finite() const { return free_rank == 0; }
  bool operator==(const AbelianInvariants& o) const {
    return torsion == o.torsion && free_rank == o.free_rank;
  }
};
AbelianInvariants cokernel_invariants(const IntMatrix& R, std::size_t n);

mpz_class vec_content(const IntVec& v);

}  // namespace hse
