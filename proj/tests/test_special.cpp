#include "doctest.h"
#include "hse/special.hpp"
#include "test_support.hpp"

using namespace hse;
using namespace hse::testing;

namespace {

QG qg(const FiniteAbelianGroup& G, std::vector<mpq_class> c) {
  c.resize(G.order(), 0);
  return QG(G, c);
}

ZGMatrix unit_columns(const FiniteAbelianGroup& G, std::size_t d, std::size_t a) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < a; ++i) idx.push_back(i);
  return ZGMatrix::identity(G, d).select_columns(idx);
}

struct Instance {
  StrictSample s;
  LambdaMap lam;
  QG L;
};

Instance random_instance(const FiniteAbelianGroup& G, std::mt19937& rng, std::size_t d,
                         std::size_t a) {
  Instance I{random_strict(G, rng, d, a), {}, {}};
  I.lam = random_lambda(G, character_spaces(I.s.C), rng());
  I.L = theta_det(I.s.C, I.lam).u;
  return I;
}

}  // namespace

TEST_CASE("theta of psi = [3] is 1/3") {
  FiniteAbelianGroup T;
  StrictComplex C{zg_matrix(T, {{{3}}})};
  auto S = character_spaces(C);
  ThetaResult th = theta_det(C, LambdaMap::canonical(T, S));
  CHECK(th.u == qg(T, {mpq_class(1, 3)}));
  CHECK(th.choice_independent);
  CHECK(th.lattice == IdealLattice::generated_by(T, {qg(T, {mpq_class(1, 3)})}));
  // X empty: x Z[G] L^-1 = 3Z = Fit^0(Z/3).
  CharelsReport R = check_charels(C, LambdaMap::canonical(T, S), th.u, ZGMatrix(T, 1, 0));
  CHECK(R.ok());
  CHECK(R.I_eta == R.fit);
  CHECK(R.fit == IdealLattice::generated_by(T, {qg(T, {3})}));
}

TEST_CASE("acyclic complex has L = 1") {
  FiniteAbelianGroup G({2});
  StrictComplex C{ZGMatrix::identity(G, 2)};
  LambdaMap lam = LambdaMap::canonical(G, character_spaces(C));
  CHECK(characteristic_element(C, lam) == QG::one(G));
  CharelsReport R = check_charels(C, lam, QG::one(G), ZGMatrix(G, 2, 0));
  CHECK(R.ok());
  CHECK(R.I_eta == IdealLattice::unit(G));
  CHECK(R.fit == IdealLattice::unit(G));
}

TEST_CASE("diag(0, 2) with X = b1") {
  FiniteAbelianGroup T;
  StrictComplex C{zg_matrix(T, {{{0}, {0}}, {{0}, {2}}})};
  auto S = character_spaces(C);
  LambdaMap lam = LambdaMap::canonical(T, S);
  ThetaResult th = theta_det(C, lam);
  CHECK(th.u == qg(T, {mpq_class(1, 2)}));
  ZGMatrix X = unit_columns(T, 2, 1);
  SpecialElement se = special_element(C, lam, th.u, X);
  REQUIRE(se.eta.size() == 2);
  CHECK(se.eta[0] == qg(T, {2}));
  CHECK(se.eta[1].is_zero());

  CharelsReport R = check_charels(C, lam, th.u, X);
  CHECK(R.separable);
  CHECK(R.fit_equality);
  CHECK(R.ok());
  CHECK(R.I_eta == IdealLattice::generated_by(T, {qg(T, {2})}));

  PairingReport P = pairing(C, lam, th.u, X);
  CHECK(P.left.torsion == std::vector<mpz_class>{2});
  CHECK(P.right.torsion == std::vector<mpz_class>{2});
  REQUIRE(P.matrix.rows() == 1);
  CHECK(P.matrix(0, 0) == mpq_class(1, 2));
  CHECK(P.well_defined);
  CHECK(P.perfect);
  CHECK(P.sequence_exact_orders);
}

TEST_CASE("1 - g over C2") {
  FiniteAbelianGroup G({2});
  StrictComplex C{zg_matrix(G, {{{1, -1}}})};
  auto S = character_spaces(C);
  // lambda(1 + g) = class of 1.
  LambdaMap lam = LambdaMap::from_matrix(G, S, ZGMatrix::identity(G, 1), 2);
  ThetaResult th = theta_det(C, lam);
  CHECK(th.values == std::vector<Cyc>{Cyc(2), Cyc(mpq_class(1, 2))});
  CHECK(th.u == qg(G, {mpq_class(5, 4), mpq_class(3, 4)}));
  ZGMatrix X = ZGMatrix::identity(G, 1);
  SpecialElement se = special_element(C, lam, th.u, X);
  CHECK(se.eta == std::vector<QG>{qg(G, {mpq_class(1, 2), mpq_class(1, 2)})});
  CharelsReport R = check_charels(C, lam, th.u, X);
  CHECK(R.x == qg(G, {1, 1}));
  CHECK(R.x_eta_integral);
  // Hom(Z(1 + g), Z[G]) takes values in Z(1 + g), so f(eta) = k (1 + g) / 2.
  CHECK(R.I_eta == IdealLattice::generated_by(G, {qg(G, {mpq_class(1, 2), mpq_class(1, 2)})}));
  CHECK(R.ok());
}

TEST_CASE("user supplied x is validated by support") {
  FiniteAbelianGroup G({2});
  StrictComplex C{zg_matrix(G, {{{1, -1}}})};
  auto S = character_spaces(C);
  LambdaMap lam = LambdaMap::from_matrix(G, S, ZGMatrix::identity(G, 1), 2);
  QG L = theta_det(C, lam).u;
  CHECK_FALSE(check_charels(C, lam, L, ZGMatrix::identity(G, 1), zg(G, {1})).x_valid);
  CHECK(check_charels(C, lam, L, ZGMatrix::identity(G, 1), zg(G, {3, 3})).ok());
}

TEST_CASE("evaluation lattice examples") {
  FiniteAbelianGroup T;
  GLattice H1 = GLattice::embedded(T, 1, ZLattice::standard(1));
  CHECK(evaluation_lattice({qg(T, {2})}, H1, 1) == IdealLattice::generated_by(T, {qg(T, {2})}));
  FiniteAbelianGroup G({2});
  GLattice N = GLattice::embedded(G, 1, ZLattice::from_rows(QMatrix::from_rows({{1, 1}}), 2));
  QG half_norm = qg(G, {mpq_class(1, 2), mpq_class(1, 2)});
  CHECK(evaluation_lattice({half_norm}, N, 1) == IdealLattice::generated_by(G, {half_norm}));
}

TEST_CASE("lambda maps are Galois compatible isomorphisms") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    std::size_t d = 1 + rng() % 3;
    StrictComplex C = random_strict(G, rng, d, rng() % (d + 1)).C;
    LambdaMap lam = random_lambda(G, character_spaces(C), rng());
    CHECK(lam.is_isomorphism());
    CHECK(lam.galois_compatible());
  }
}

TEST_CASE("theta lattice is invariant under change of basis") {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    std::size_t d = 1 + rng() % 3;
    StrictComplex C = random_strict(G, rng, d, rng() % (d + 1)).C;
    auto S = character_spaces(C);
    LambdaMap lam = random_lambda(G, S, rng());
    ThetaResult th = theta_det(C, lam);
    CHECK(th.choice_independent);
    ZGMatrix U = random_unimodular_zg(G, d, rng), V = random_unimodular_zg(G, d, rng);
    StrictComplex C2{V * C.psi * U};
    auto S2 = character_spaces(C2);
    LambdaMap lam2 = transport_lambda(
        lam, S, S2, [&](int chi, const KVec& v) { return U.at_character(chi).apply(v); },
        [&](int chi, const KVec& w) { return V.at_character(chi).apply(w); });
    ThetaResult th2 = theta_det(C2, lam2);
    CHECK(th2.lattice == th.lattice);
    CHECK(th2.u * to_rational(zg_det(U)) * to_rational(zg_det(V)) == th.u);
  }
}

TEST_CASE("minor formula agrees with the defining equation") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    std::size_t d = 1 + rng() % 3, a = rng() % (d + 1);
    Instance I = random_instance(G, rng, d, a);
    // Arbitrary invertible L, so the formula is not tested only at L = u.
    QG L = I.L * to_rational(random_nonvanishing(G, rng));
    SpecialElement se = special_element(I.s.C, I.lam, L, I.s.X);
    AdaptedBasis B = adapted_basis(I.s.C, I.s.X, rng());
    REQUIRE(B.ok);
    std::vector<QG> minor = eta_minor_formula(B, I.L, L);
    CHECK(minor == pad_wedge(se.eta, d, B.stabilized, static_cast<int>(a)));
  }
}

TEST_CASE("scaling L by a unit scales eta by its inverse") {
  std::mt19937 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    std::size_t d = 1 + rng() % 3, a = rng() % (d + 1);
    Instance I = random_instance(G, rng, d, a);
    ZG w = ZG::basis(G, G.order() - 1).scaled(-1);
    QG wq = to_rational(w);
    SpecialElement s1 = special_element(I.s.C, I.lam, I.L, I.s.X);
    SpecialElement s2 = special_element(I.s.C, I.lam, wq * I.L, I.s.X);
    QG winv = to_rational(*zg_unit_inverse(w));
    for (std::size_t t = 0; t < s1.eta.size(); ++t) CHECK(s2.eta[t] == winv * s1.eta[t]);
    CharelsReport r1 = check_charels(I.s.C, I.lam, I.L, I.s.X);
    CharelsReport r2 = check_charels(I.s.C, I.lam, wq * I.L, I.s.X);
    CHECK(r1.ok() == r2.ok());
    CHECK(r1.I_eta == r2.I_eta);
  }
}

TEST_CASE("eta is supported on e_a") {
  std::mt19937 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    std::size_t d = 1 + rng() % 3, a = rng() % (d + 1);
    Instance I = random_instance(G, rng, d, a);
    ZGMatrix X = random_zgmatrix(G, rng, d, a, 1);
    SpecialElement se = special_element(I.s.C, I.lam, I.L, X);
    for (const auto& c : se.eta) CHECK(se.e_a.e * c == c);
  }
}

TEST_CASE("separable X: Fitting ideal equality and containments") {
  std::mt19937 rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    std::size_t d = 1 + rng() % 3, a = rng() % std::min<std::size_t>(d + 1, 3);
    Instance I = random_instance(G, rng, d, a);
    CharelsReport R = check_charels(I.s.C, I.lam, I.L, I.s.X);
    CHECK(R.separable);
    CHECK(R.e_at_least_one);
    CHECK(R.fit_equality);
    CHECK_MESSAGE(R.ok(), R.witness);
  }
}

TEST_CASE("arbitrary X: containments after scaling by x") {
  std::mt19937 rng(27);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    std::size_t d = 1 + rng() % 3, a = rng() % std::min<std::size_t>(d + 1, 3);
    Instance I = random_instance(G, rng, d, a);
    ZGMatrix X = random_zgmatrix(G, rng, d, a, 1);
    CharelsReport R = check_charels(I.s.C, I.lam, I.L, X);
    CHECK(R.fit_inclusion);
    CHECK(R.ann_inclusion);
    CHECK(R.x_eta_integral);
    CHECK(R.integrality_all);
  }
}

TEST_CASE("pairing is perfect on random instances") {
  std::mt19937 rng(28);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    std::size_t d = 1 + rng() % 3, a = rng() % std::min<std::size_t>(d + 1, 3);
    Instance I = random_instance(G, rng, d, a);
    ZGMatrix X = trial % 2 ? I.s.X : random_zgmatrix(G, rng, d, a, 1);
    CharelsReport R = check_charels(I.s.C, I.lam, I.L, X);
    if (R.I_eta.is_zero()) continue;  // x e_a must be invertible on e_a
    PairingReport P = pairing(I.s.C, I.lam, I.L, X);
    CHECK_MESSAGE(P.witness.empty(), P.witness);
    CHECK(P.left.torsion_order() == P.right.torsion_order());
    CHECK(P.well_defined);
    CHECK(P.perfect);
    CHECK(P.sequence_exact_orders);
  }
}

TEST_CASE("finite case examples") {
  FiniteAbelianGroup T;
  // 0 -> Z --3--> Z
  ThreeTermComplex D1 = ThreeTermComplex::make(zg_matrix(T, {{{3}}}), ZGMatrix(T, 0, 1));
  FiniteCaseReport R1 = finite_case_identity(D1);
  CHECK(R1.u == qg(T, {mpq_class(1, 3)}));
  CHECK(R1.fit_dual == IdealLattice::unit(T));
  CHECK(R1.rhs == IdealLattice::generated_by(T, {qg(T, {3})}));
  CHECK(R1.equal);
  // Z --2--> Z -> 0
  ThreeTermComplex D2 = ThreeTermComplex::with_degree_zero(zg_matrix(T, {{{2}}}), ZGMatrix(T, 0, 1),
                                                           ZGMatrix(T, 0, 0));
  FiniteCaseReport R2 = finite_case_identity(D2);
  CHECK(R2.u == qg(T, {2}));
  CHECK(R2.fit_dual == IdealLattice::generated_by(T, {qg(T, {2})}));
  CHECK(R2.equal);
  FiniteAbelianGroup G({2});
  ThreeTermComplex D3 = ThreeTermComplex::make(ZGMatrix::identity(G, 1), ZGMatrix(G, 0, 1));
  CHECK(finite_case_identity(D3).equal);
}

TEST_CASE("finite case identity on random complexes") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    std::size_t k = rng() % 3, m = 1 + rng() % 2;
    ZGMatrix U = random_unimodular_zg(G, k + m, rng);
    ZGMatrix Uinv = *zg_inverse(U);
    ZGMatrix A(G, k + m, k), B(G, m, k + m);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) A(i, j) = i == j ? random_nonvanishing(G, rng) : random_zg(G, rng, 1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) B(i, k + j) = i == j ? random_nonvanishing(G, rng) : ZG(G);
    ThreeTermComplex D = ThreeTermComplex::with_degree_zero(
        U * A * random_unimodular_zg(G, k, rng), random_unimodular_zg(G, m, rng) * B * Uinv,
        ZGMatrix(G, 0, m));
    FiniteCaseReport R = finite_case_identity(D);
    CHECK(R.equal);
  }
}

TEST_CASE("reduction: u_C / (x u_Cx) is a unit") {
  FiniteAbelianGroup T;
  ThreeTermComplex C = ThreeTermComplex::make(ZGMatrix(T, 1, 0), zg_matrix(T, {{{2}}}));
  ReductionResult R = reduce_to_strict(C);
  REQUIRE(R.found);
  ReductionDetReport D = reduction_determinant_check(C, R);
  CHECK(D.ok);
  CHECK(D.ratio * D.ratio == QG::one(T));

  std::mt19937 rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteAbelianGroup G(kGroups[trial % kGroups.size()]);
    ThreeTermComplex C3 = random_three_term(G, rng, 1 + rng() % 2, 1);
    ReductionResult Rr = reduce_to_strict(C3);
    REQUIRE(Rr.found);
    CHECK(reduction_determinant_check(C3, Rr, rng()).ok);
  }
}
