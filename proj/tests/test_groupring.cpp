#include <random>

#include "doctest.h"
#include "hse/characters.hpp"

using namespace hse;

namespace {

const std::vector<std::vector<int>> kGroups = {{}, {2}, {3}, {4}, {2, 2}, {6}, {2, 4}};

QG random_qg(const FiniteAbelianGroup& G, std::mt19937& rng, int max_den) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, max_den);
  QG x(G);
  for (int g = 0; g < G.order(); ++g) {
    x[g] = mpq_class(num(rng), den(rng));
    x[g].canonicalize();
  }
  return x;
}

// Direct evaluation chi(x) = sum_g x_g zeta^k(chi,g) by repeated Cyc sums.
Cyc evaluate_directly(const QG& x, int chi) {
  const auto& G = x.group();
  Cyc s(0L);
  for (int g = 0; g < G.order(); ++g) s += Cyc(x[g]) * char_value(G, chi, g);
  return s;
}

}  // namespace

TEST_CASE("group encoding is a bijection with the identity first") {
  for (const auto& f : kGroups) {
    FiniteAbelianGroup G(f);
    CHECK(G.identity() == 0);
    for (int g = 0; g < G.order(); ++g) {
      CHECK(G.index(G.element(g)) == g);
      CHECK(G.mul(g, G.inv(g)) == 0);
    }
  }
  CHECK(FiniteAbelianGroup().order() == 1);
  CHECK(FiniteAbelianGroup().exponent() == 1);
  CHECK(FiniteAbelianGroup({2, 4}).exponent() == 4);
  CHECK_THROWS(FiniteAbelianGroup({4, 2}));
  CHECK(invariant_factors({6, 4}) == std::vector<int>{2, 12});
}

TEST_CASE("ring operations") {
  FiniteAbelianGroup C2({2}), C3({3});
  ZG g = ZG::basis(C2, 1), one = ZG::one(C2);
  CHECK(((one + g) * (one - g)).is_zero());
  ZG y = one.scaled(2) + g.scaled(3);
  CHECK(y.involution() == y);
  ZG z(C3, {1, 2, 3});
  CHECK(z.augmentation() == 6);
  CHECK_THROWS(one + ZG::one(C3));
}

TEST_CASE("cyclotomic scalars") {
  Cyc z3 = Cyc::zeta(3, 1);
  Cyc u = Cyc(1L) + z3;
  // 1 + zeta_3 = -zeta_3^2, so its inverse is -zeta_3.
  CHECK(u.inverse() == -z3);
  CHECK(u * u.inverse() == Cyc(1L));
  CHECK(Cyc::zeta(4, 2) == Cyc(-1L));
  CHECK(Cyc::zeta(6, 1) * Cyc::zeta(6, 5) == Cyc(1L));
  CHECK(Cyc::zeta(8, 1).galois(3) == Cyc::zeta(8, 3));
  CHECK_THROWS(Cyc(0L).inverse());
  CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int n : {3, 4, 5, 8, 12}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<mpq_class> a(n), b(n);
      for (int i = 0; i < n; ++i) {
        a[i] = c(rng);
        b[i] = c(rng);
      }
      Cyc x = Cyc::from_coeffs(n, a), y = Cyc::from_coeffs(n, b);
      for (int s = 1; s < n; ++s) {
        if (std::gcd(s, n) != 1) continue;
        CHECK((x * y).galois(s) == x.galois(s) * y.galois(s));
        CHECK((x + y).galois(s) == x.galois(s) + y.galois(s));
      }
      if (!x.is_zero()) CHECK(x * x.inverse() == Cyc(1L));
    }
  }
}

TEST_CASE("character coordinates") {
  FiniteAbelianGroup C2({2}), C3({3}), T;
  QG x(C2, {mpq_class(3), mpq_class(5)});
  auto c = char_coords(x);
  CHECK(c[0] == Cyc(8L));
  CHECK(c[1] == Cyc(-2L));
  CHECK(char_coords(QG::constant(T, mpq_class(5)))[0] == Cyc(5L));

  // Frozen values for 1 + g in Z/3: (2, 1 + z, 1 + z^2 = -z).
  QG y(C3, {mpq_class(1), mpq_class(1), mpq_class(0)});
  auto cy = char_coords(y);
  CHECK(cy[0] == Cyc(2L));
  CHECK(cy[1].coeffs() == std::vector<mpq_class>{1, 1});
  CHECK(cy[2].coeffs() == std::vector<mpq_class>{0, -1});
  for (int chi = 0; chi < 3; ++chi) CHECK(cy[chi] == evaluate_directly(y, chi));
}

TEST_CASE("integrality test examples") {
  FiniteAbelianGroup C2({2}), C3({3});
  CHECK_FALSE(integrality_test(C2, {Cyc(1L), Cyc(2L)}));
  CHECK(integrality_test(C2, {Cyc(1L), Cyc(1L)}));
  Cyc z = Cyc::zeta(3, 1);
  CHECK_FALSE(integrality_test(C3, {Cyc(1L), z, z}));
}

TEST_CASE("character transform properties") {
  std::mt19937 rng(20240501);
  for (const auto& f : kGroups) {
    FiniteAbelianGroup G(f);
    const int n = G.order();
    for (int t = 0; t < 1000 / static_cast<int>(kGroups.size()); ++t) {
      QG x = random_qg(G, rng, n * n);
      auto cx = char_coords(x);
      auto back = rational_from_char_coords(G, cx);
      REQUIRE(back.has_value());
      CHECK(*back == x);
      CHECK(integrality_test(G, cx) == is_integral(x));
      // Integral elements must be accepted too.
      QG xi(G);
      for (int g = 0; g < n; ++g) xi[g] = mpq_class(x[g].get_num());
      CHECK(integrality_test(G, char_coords(xi)));

      QG y = random_qg(G, rng, 3);
      CHECK((x * y).involution() == x.involution() * y.involution());
      auto cinv = char_coords(x.involution());
      for (int chi = 0; chi < n; ++chi) {
        CHECK(cinv[chi] == cx[G.inv(chi)]);
        CHECK(cx[chi] == evaluate_directly(x, chi));
      }
    }
  }
}

TEST_CASE("idempotents from rank classes") {
  FiniteAbelianGroup C2({2});
  Idempotent e1 = idempotent(C2, support_equal({1, 0}, 1));
  CHECK(e1.e == QG(C2, {mpq_class(1, 2), mpq_class(1, 2)}));
  CHECK(e1.N == 2);
  Idempotent e0 = idempotent(C2, support_equal({1, 0}, 0));
  CHECK(e0.e == QG(C2, {mpq_class(1, 2), mpq_class(-1, 2)}));
  CHECK((e0.e * e1.e).coeffs() == std::vector<mpq_class>{0, 0});
  CHECK(e0.e + e1.e == QG::one(C2));

  FiniteAbelianGroup T;
  Idempotent t = idempotent(T, {true});
  CHECK(t.e == QG::one(T));
  CHECK(t.N == 1);

  // Rank maps must be constant on Galois orbits: chi and chi^-1 in Z/3.
  FiniteAbelianGroup C3({3});
  CHECK_THROWS(idempotent(C3, {false, true, false}));
  CHECK(idempotent(C3, {true, true, true}).e == QG::one(C3));
}

TEST_CASE("quotient groups") {
  FiniteAbelianGroup C4({4});
  auto q = quotient_group(C4, {2});
  CHECK(q.quotient.factors() == std::vector<int>{2});
  CHECK(q.subgroup == std::vector<int>{0, 2});
  CHECK(q.projection[1] == q.projection[3]);
  CHECK(q.projection[0] == 0);

  FiniteAbelianGroup V({2, 2});
  auto qv = quotient_group(V, {V.index({1, 1})});
  CHECK(qv.quotient.order() == 2);
  CHECK(qv.projection[V.index({1, 0})] == qv.projection[V.index({0, 1})]);
  auto full = quotient_group(V, {1, 2});
  CHECK(full.quotient.order() == 1);
}
