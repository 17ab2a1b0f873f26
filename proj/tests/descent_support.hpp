#pragma once

// Instances for the descent congruence with X and X' known by construction.

#include "hse/descent.hpp"
#include "test_support.hpp"

namespace hse::testing {

struct Hidden {
  StrictComplex C;
  std::vector<int> gens;
  ZGMatrix X, Xp;
  LambdaMap lam;
  QG L;
};

// psi = V psi0 U with rows < a of psi0 zero and rows a..a'-1 in the ideal
// generated by I(J); X and X' are read off V.
inline Hidden hidden_instance(const FiniteAbelianGroup& G, const std::vector<int>& gens, std::mt19937& rng,
                       std::size_t d, std::size_t a, std::size_t ap) {
  const auto J = generated_subgroup(G, gens);
  ZGMatrix psi0(G, d, d);
  for (std::size_t i = a; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i < ap) {
        int s = J[rng() % J.size()];
        psi0(i, j) = random_zg(G, rng, 1) * (ZG::basis(G, s) - ZG::one(G));
      } else if (i == j) {
        psi0(i, j) = random_nonvanishing(G, rng);
      } else if (rng() % 2) {
        psi0(i, j) = random_zg(G, rng, 1);
      }
    }
  ZGMatrix V = random_unimodular_zg(G, d, rng);
  ZGMatrix U = random_unimodular_zg(G, d, rng);
  Hidden h;
  h.C = StrictComplex{V * psi0 * U};
  h.gens = gens;
  std::vector<std::size_t> xi, xpi;
  for (std::size_t i = 0; i < a; ++i) xi.push_back(i);
  for (std::size_t i = a; i < ap; ++i) xpi.push_back(i);
  h.X = V.select_columns(xi);
  h.Xp = project_matrix(quotient_group(G, gens), V.select_columns(xpi));
  h.lam = random_lambda(G, character_spaces(h.C), rng());
  h.L = theta_det(h.C, h.lam).u;
  return h;
}

}  // namespace hse::testing
