#include <random>

#include "doctest.h"
#include "hse/fieldlinalg.hpp"
#include "hse/lattice.hpp"

using namespace hse;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix M(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = d(rng);
  return M;
}

// Product of random elementary operations: unimodular by construction.
IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix U = IntMatrix::identity(n);
  if (n < 2) return U;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> q(-2, 2);
  for (int t = 0; t < 3 * static_cast<int>(n); ++t) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int k = q(rng);
    for (std::size_t c = 0; c < n; ++c) U(i, c) += k * U(j, c);
  }
  return U;
}

bool is_diagonal_chain(const IntMatrix& S) {
  for (std::size_t i = 0; i < S.rows(); ++i)
    for (std::size_t j = 0; j < S.cols(); ++j)
      if (i != j && S(i, j) != 0) return false;
  std::size_t k = std::min(S.rows(), S.cols());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (S(i, i) < 0) return false;
    if (S(i, i) == 0 && S(i + 1, i + 1) != 0) return false;
    if (S(i, i) != 0 && S(i + 1, i + 1) % S(i, i) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("normal form examples") {
  IntMatrix D = IntMatrix::from_rows({{2, 0}, {0, 3}});
  SNFResult s = snf(D);
  CHECK(s.diag == std::vector<mpz_class>{1, 6});
  CHECK(s.U * D * s.V == s.S);
  CHECK(s.V * s.Vinv == IntMatrix::identity(2));

  IntMatrix Z = IntMatrix::zeros(2, 3);
  CHECK(snf(Z).S == Z);
  HNFResult h = hnf(IntMatrix::identity(3));
  CHECK(h.H == IntMatrix::identity(3));
  CHECK(h.U == IntMatrix::identity(3));
  CHECK(det(IntMatrix::from_rows({{2, 1}, {7, 4}})) == 1);
}

TEST_CASE("normal forms are canonical under unimodular perturbation") {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix M = random_matrix(rng, r, c, 6);
    IntMatrix U = random_unimodular(rng, r), V = random_unimodular(rng, c);
    HNFResult h1 = hnf(M), h2 = hnf(U * M);
    CHECK(h1.H == h2.H);
    CHECK(h1.U * M == h1.H);
    CHECK(abs(det(h1.U)) == 1);
    SNFResult s1 = snf(M), s2 = snf(U * M * V);
    CHECK(s1.diag == s2.diag);
    CHECK(is_diagonal_chain(s1.S));
    CHECK(s1.U * M * s1.V == s1.S);
    CHECK(s1.Vinv * s1.V == IntMatrix::identity(c));
  }
}

TEST_CASE("kernels and integer solving") {
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 4;
    IntMatrix M = random_matrix(rng, r, c, 4);
    IntMatrix K = left_kernel(M);
    CHECK(K * M == IntMatrix::zeros(K.rows(), c));
    IntMatrix Rk = right_kernel(M);
    CHECK(M * Rk.transpose() == IntMatrix::zeros(r, Rk.rows()));
    IntVec x(r);
    for (auto& v : x) v = static_cast<int>(rng() % 7) - 3;
    IntVec b = M.left_apply(x);
    auto sol = solve_left(M, b);
    REQUIRE(sol.has_value());
    CHECK(M.left_apply(*sol) == b);
  }
  IntMatrix A = IntMatrix::from_rows({{2, 0}, {0, 2}});
  CHECK_FALSE(solve_left(A, {1, 0}).has_value());
}

TEST_CASE("lattice operations") {
  ZLattice L1 = ZLattice::standard(2);
  ZLattice L2 = ZLattice::from_rows(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  AbelianInvariants q = L1.quotient_invariants(L2);
  CHECK(q.torsion == std::vector<mpz_class>{6});
  CHECK(q.torsion_order() == 6);
  CHECK(L1.quotient_invariants(L1).torsion.empty());
  ZLattice twoZ2 = ZLattice::from_rows(IntMatrix::from_rows({{2, 0}, {0, 2}}));
  CHECK_FALSE(twoZ2.contains(QVec{1, 1}));
  CHECK(L1.contains(twoZ2));

  // Intersection and sum of 2Z x Z and Z x 3Z.
  ZLattice A = ZLattice::from_rows(IntMatrix::from_rows({{2, 0}, {0, 1}}));
  ZLattice B = ZLattice::from_rows(IntMatrix::from_rows({{1, 0}, {0, 3}}));
  CHECK(A.intersect(B) == L2);
  CHECK(A + B == L1);

  // Denominators are normalized.
  ZLattice half = ZLattice::from_rows(IntMatrix::from_rows({{2, 4}}), 4);
  CHECK(half.denominator() == 2);
  CHECK(half.contains(QVec{mpq_class(1, 2), 1}));
  CHECK(half.scaled(2) == ZLattice::from_rows(IntMatrix::from_rows({{1, 2}})));

  // Saturation of 2(1,1) is Z(1,1).
  ZLattice s = ZLattice::from_rows(IntMatrix::from_rows({{2, 2}})).saturation();
  CHECK(s == ZLattice::from_rows(IntMatrix::from_rows({{1, 1}})));
}

TEST_CASE("index is multiplicative on nested triples") {
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    IntMatrix B = random_matrix(rng, 3, 3, 3);
    if (det(B) == 0) continue;
    ZLattice L3 = ZLattice::from_rows(B);
    ZLattice L2 = L3 + ZLattice::from_rows(random_matrix(rng, 1, 3, 3));
    ZLattice L1 = L2 + ZLattice::from_rows(random_matrix(rng, 1, 3, 3));
    CHECK(L1.quotient_invariants(L3).torsion_order() ==
          L1.quotient_invariants(L2).torsion_order() * L2.quotient_invariants(L3).torsion_order());
    auto gens = L1.quotient_generators(L3);
    ZLattice rebuilt = L3;
    for (const auto& g : gens) rebuilt = rebuilt + ZLattice::from_rows(QMatrix::from_rows({g}), 3);
    CHECK(rebuilt == L1);
  }
}

TEST_CASE("field linear algebra over cyclotomic fields") {
  Cyc z = Cyc::zeta(3, 1);
  KMatrix M = KMatrix::from_rows({{Cyc(1L) + z}});
  auto x = solve(M, KVec{Cyc(1L)});
  REQUIRE(x.has_value());
  CHECK(M.apply(*x) == KVec{Cyc(1L)});
  CHECK((*x)[0] == -z);

  KMatrix Zm = KMatrix::zeros(2, 3);
  CHECK(rank(Zm) == 0);
  CHECK(kernel(Zm).size() == 3);
  KMatrix I = KMatrix::identity(2);
  KVec b{z, Cyc(5L)};
  CHECK(*solve(I, b) == b);

  std::mt19937 rng(9);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int t = 0; t < 40; ++t) {
    KMatrix A(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        A(i, j) = Cyc::from_coeffs(4, {mpq_class(c(rng)), mpq_class(c(rng))});
    for (const auto& v : kernel(A)) CHECK(A.apply(v) == KVec(3, Cyc(0L)));
    KMatrix S = A.block(0, 0, 3, 3);
    auto inv = inverse(S);
    if (det(S).is_zero()) {
      CHECK_FALSE(inv.has_value());
    } else {
      REQUIRE(inv.has_value());
      CHECK(S * *inv == KMatrix::identity(3));
      CHECK(det(S) * det(*inv) == Cyc(1L));
    }
  }
}
