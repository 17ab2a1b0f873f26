#pragma once

// Template definitions for complexes.hpp.

#include <random>

namespace hse {

template <class Rng>
ZG random_zg(const FiniteAbelianGroup& G, Rng& rng, int bound) {
  std::uniform_int_distribution<int> coef(-bound, bound);
  ZG x(G);
  for (int g = 0; g < G.order(); ++g) x[g] = coef(rng);
  return x;
}

template <class Rng>
ZGMatrix random_unimodular_zg(const FiniteAbelianGroup& G, std::size_t n, Rng& rng, int steps,
                              int bound) {
  ZGMatrix U = ZGMatrix::identity(G, n);
  if (n == 0) return U;
  if (steps < 0) steps = static_cast<int>(2 * n + 2);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> elem(0, G.order() - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j || coin(rng) == 0) {
      // Scale a row by a trivial unit +-g.
      ZG u = ZG::basis(G, elem(rng), coin(rng) % 2 ? 1 : -1);
      for (std::size_t c = 0; c < n; ++c) U(i, c) = u * U(i, c);
      continue;
    }
    ZG r = random_zg(G, rng, bound);
    for (std::size_t c = 0; c < n; ++c) U(i, c) += r * U(j, c);
  }
  return U;
}

}  // namespace hse
