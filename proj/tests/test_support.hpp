#pragma once

// Small helpers shared by the unit tests.

#include <random>

#include "hse/complexes.hpp"

namespace hse::testing {

inline const std::vector<std::vector<int>> kGroups = {{}, {2}, {3}, {4}, {2, 2}};

inline ZG zg(const FiniteAbelianGroup& G, std::vector<long> c) {
  std::vector<mpz_class> v(c.begin(), c.end());
  v.resize(G.order(), 0);
  return ZG(G, v);
}

inline ZGMatrix zg_matrix(const FiniteAbelianGroup& G,
                          const std::vector<std::vector<std::vector<long>>>& rows) {
  ZGMatrix A(G, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) A(i, j) = zg(G, rows[i][j]);
  return A;
}

inline ZGMatrix random_zgmatrix(const FiniteAbelianGroup& G, std::mt19937& rng, std::size_t r,
                                std::size_t c, int bound) {
  ZGMatrix A(G, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) A(i, j) = random_zg(G, rng, bound);
  return A;
}

// A diagonal entry that is nonzero at every character.
inline ZG random_nonvanishing(const FiniteAbelianGroup& G, std::mt19937& rng) {
  for (;;) {
    ZG x = random_zg(G, rng, 2);
    bool ok = true;
    for (const auto& c : char_coords(x)) ok = ok && !c.is_zero();
    if (ok) return x;
  }
}

struct StrictSample {
  StrictComplex C;
  ZGMatrix X;  // separable lifts: U e_i at the zero positions of D
  ZGMatrix U, V;
};

// psi = U D V with D diagonal: a zeros followed by random entries.
inline StrictSample random_strict(const FiniteAbelianGroup& G, std::mt19937& rng, std::size_t d,
                                  std::size_t a) {
  ZGMatrix D(G, d, d);
  const std::vector<ZG> menu = {ZG::one(G), ZG::constant(G, 2), ZG::constant(G, 3),
                                ZG::one(G) - ZG::basis(G, G.order() > 1 ? 1 : 0),
                                ZG::one(G) + ZG::basis(G, G.order() > 1 ? 1 : 0),
                                ZG::sum_of(G, generated_subgroup(G, {G.order() - 1}))};
  for (std::size_t i = a; i < d; ++i) {
    std::size_t k = rng() % (menu.size() + 1);
    D(i, i) = k < menu.size() ? menu[k] : random_zg(G, rng, 2);
  }
  StrictSample s;
  s.U = random_unimodular_zg(G, d, rng);
  s.V = random_unimodular_zg(G, d, rng);
  s.C = StrictComplex{s.U * D * s.V};
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < a; ++i) idx.push_back(i);
  s.X = s.U.select_columns(idx);
  return s;
}

// d1 = U [0; A] V and d2 = W [D3 | 0] U^-1 with D3 diagonal and nonvanishing,
// so H^3 is finite.
inline ThreeTermComplex random_three_term(const FiniteAbelianGroup& G, std::mt19937& rng,
                                          std::size_t s1, std::size_t s3) {
  const std::size_t s2 = s1 + s3;
  ZGMatrix U = random_unimodular_zg(G, s2, rng);
  ZGMatrix Uinv = *zg_inverse(U);
  ZGMatrix V = random_unimodular_zg(G, s1, rng);
  ZGMatrix W = random_unimodular_zg(G, s3, rng);
  ZGMatrix A = random_zgmatrix(G, rng, s1, s1, 1);
  ZGMatrix left(G, s2, s1), right(G, s3, s2);
  for (std::size_t i = 0; i < s1; ++i)
    for (std::size_t j = 0; j < s1; ++j) left(s3 + i, j) = A(i, j);
  for (std::size_t i = 0; i < s3; ++i) right(i, i) = random_nonvanishing(G, rng);
  return ThreeTermComplex::make(U * left * V, W * right * Uinv);
}

}  // namespace hse::testing
