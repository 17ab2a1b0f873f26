#pragma once

#include <vector>

#include "hse/gmodule.hpp"

namespace hse {

// Lexicographically ordered k-subsets of {0, ..., n-1}.
std::vector<std::vector<int>> subsets(int n, int k);
std::size_t binomial(int n, int k);
// Position of a sorted subset in the order produced by subsets(n, k).
std::size_t subset_index(int n, const std::vector<int>& s);

// Determinant over a commutative ring by cofactor expansion (small sizes).
template <class R>
R ring_det(const std::vector<std::vector<R>>& m, const R& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  if (n == 1) return m[0][0];
  R out = one - one;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<R>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<R> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    R term = m[0][j] * ring_det(minor, one);
    out = (j % 2 == 0) ? out + term : out - term;
  }
  return out;
}

// Coordinates of v_1 ^ ... ^ v_a in the basis e_I of the a-th exterior power
// of Q[G]^d, I running over subsets(d, a).
std::vector<QG> wedge(const FiniteAbelianGroup& G, std::size_t d,
                      const std::vector<std::vector<QG>>& vs);

// (phi_1 ^ ... ^ phi_a)(w) for w in the a-th exterior power of Q[G]^d,
// given the values vals[k][j] = phi_k(e_j).
QG wedge_functional(const FiniteAbelianGroup& G, const std::vector<std::vector<QG>>& vals,
                    const std::vector<QG>& w);

// Exterior power of a finitely presented module: generators e_I, relations
// r ^ e_J for each relation row r and each (a-1)-subset J.
PresentedModule exterior_power(const PresentedModule& M, int a);

// Data shared by the bidual and I(eta) computations for an embedded lattice.
struct ExteriorDual {
  FiniteAbelianGroup G;
  std::size_t d = 0;
  int a = 0;
  // Values phi_t(e_j) for Z[G]-generators phi_t of the dual lattice.
  std::vector<std::vector<QG>> functionals;
  // Subsets T of the generators indexing the wedge functionals.
  std::vector<std::vector<int>> tuples;
  // D[T][I] = det(phi_{T_k}(e_{I_l})), so Phi_T(w) = sum_I w_I D[T][I].
  std::vector<std::vector<QG>> D;

  QG evaluate(std::size_t t, const std::vector<QG>& w) const;
};
ExteriorDual exterior_dual(const GLattice& M, int a);

// The a-th exterior bidual of M, as a lattice in Q[G]^C(d, a) flattened.
ZLattice bidual(const GLattice& M, int a);
// Z-span of all values Phi(w), Phi in the a-th exterior power of M*.
IdealLattice functional_ideal(const GLattice& M, int a, const std::vector<QG>& w);

}  // namespace hse
