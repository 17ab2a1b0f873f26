#include "hse/special.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hse {

namespace {

KMatrix cols_matrix(const std::vector<KVec>& cols, std::size_t n) {
  return from_columns(cols, n);
}

KVec kapply(const KMatrix& A, const KVec& v) {
  if (A.rows() == 0) return KVec{};
  return A.apply(v);
}

KVec combination(const std::vector<KVec>& vs, const KVec& c, std::size_t n) {
  KVec out(n, Cyc(0));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (c[j].is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) out[k] += c[j] * vs[j][k];
  }
  return out;
}

KMatrix galois_block(const KMatrix& B, long s) {
  KMatrix out(B.rows(), B.cols());
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) out(i, j) = B(i, j).galois(s);
  return out;
}

QG assemble(const FiniteAbelianGroup& G, const std::vector<Cyc>& v, const char* what) {
  auto q = rational_from_char_coords(G, v);
  if (!q) throw std::logic_error(std::string(what) + ": character data is not Galois compatible");
  return *q;
}

// Lifts of lambda(h1_i) in ker d2.
std::vector<KVec> lambda_lifts(const CharacterSpaces& S, const KMatrix& block) {
  std::vector<KVec> out;
  const std::size_t n2 = S.d1.rows();
  for (std::size_t i = 0; i < S.h1.size(); ++i) out.push_back(combination(S.h2, block.col(i), n2));
  return out;
}

Cyc theta_from_bases(const CharacterSpaces& S, const std::vector<KVec>& lifts,
                     const std::vector<KVec>& w1, const std::vector<KVec>& w2) {
  const std::size_t s1 = S.d1.cols(), s2 = S.d1.rows(), s3 = S.d2.rows();
  std::vector<KVec> B1 = columns_of(S.d0);
  B1.insert(B1.end(), S.h1.begin(), S.h1.end());
  B1.insert(B1.end(), w1.begin(), w1.end());
  std::vector<KVec> B2 = lifts;
  for (const auto& w : w1) B2.push_back(kapply(S.d1, w));
  B2.insert(B2.end(), w2.begin(), w2.end());
  std::vector<KVec> B3;
  for (const auto& w : w2) B3.push_back(kapply(S.d2, w));
  if (B1.size() != s1 || B2.size() != s2 || B3.size() != s3)
    throw std::logic_error("theta_det: bases have the wrong size");
  Cyc d1 = det(cols_matrix(B1, s1)), d2 = det(cols_matrix(B2, s2)), d3 = det(cols_matrix(B3, s3));
  if (d1.is_zero() || d2.is_zero() || d3.is_zero())
    throw std::invalid_argument("theta_det: lambda is not an isomorphism");
  return d1 * d3 / d2;
}

void require_defined(const CharacterSpaces& S, const LambdaMap& lam) {
  if (!S.h0_zero) throw std::invalid_argument("theta_det: H^0 does not vanish");
  if (!S.h3_zero) throw std::invalid_argument("theta_det: H^3 is not finite");
  const std::size_t r = S.h1.size();
  const KMatrix& B = lam.blocks.at(S.chi);
  if (S.h2.size() != r || B.rows() != r || B.cols() != r)
    throw std::invalid_argument("theta_det: lambda has the wrong shape");
}

// {v in B : v in Q S}.
ZLattice intersect_with_span(const ZLattice& B, const ZLattice& S) {
  const std::size_t n = B.ambient_dim();
  if (S.is_zero()) return ZLattice(n);
  if (B.is_zero()) return B;
  auto K = kernel(S.basis());  // vectors orthogonal to S
  if (K.empty()) return B;
  QMatrix Kt(n, K.size());
  for (std::size_t j = 0; j < K.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) Kt(i, j) = K[j][i];
  QMatrix M = B.basis() * Kt;
  mpz_class den = 1;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    mpz_class di = common_denominator(M.row(i));
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), di.get_mpz_t());
  }
  IntMatrix Mi(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i) Mi.set_row(i, scale_to_integers(M.row(i), den));
  IntMatrix C = left_kernel(Mi);
  if (C.rows() == 0) return ZLattice(n);
  return ZLattice::from_rows(to_rational(C) * B.basis(), n);
}

ZLattice idempotent_span(const FiniteAbelianGroup& G, const QG& e) {
  return zg_span(G, G.order(), {e.coeffs()});
}

int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

QG qg_from_vec(const FiniteAbelianGroup& G, const QVec& v) { return QG(G, v); }

}  // namespace

// --- lambda ------------------------------------------------------------------------

LambdaMap LambdaMap::canonical(const FiniteAbelianGroup& G, const std::vector<CharacterSpaces>& S) {
  LambdaMap L;
  L.G = G;
  for (const auto& s : S) {
    if (s.h1.size() != s.h2.size())
      throw std::invalid_argument("lambda: H^1 and H^2 have different dimensions");
    L.blocks.push_back(KMatrix::identity(s.h1.size()));
  }
  return L;
}

LambdaMap LambdaMap::from_matrix(const FiniteAbelianGroup& G, const std::vector<CharacterSpaces>& S,
                                 const ZGMatrix& M, const mpz_class& den) {
  LambdaMap L;
  L.G = G;
  for (const auto& s : S) {
    if (M.rows() != s.d1.rows() || M.cols() != s.d1.cols())
      throw std::invalid_argument("lambda: matrix has the wrong shape");
    KMatrix Mc = M.at_character(s.chi);
    KMatrix B(s.h2.size(), s.h1.size());
    for (std::size_t i = 0; i < s.h1.size(); ++i) {
      KVec w = Mc.apply(s.h1[i]);
      for (auto& c : w) c = c / Cyc(den);
      for (const auto& c : kapply(s.d2, w))
        if (!c.is_zero()) throw std::invalid_argument("lambda: image is not a cocycle");
      auto coords = s.h2_coordinates(w);
      if (!coords) throw std::logic_error("lambda: cocycle outside the cohomology basis");
      for (std::size_t j = 0; j < coords->size(); ++j) B(j, i) = (*coords)[j];
    }
    L.blocks.push_back(B);
  }
  return L;
}

bool LambdaMap::is_isomorphism() const {
  for (const auto& B : blocks) {
    if (B.rows() != B.cols()) return false;
    if (B.rows() > 0 && det(B).is_zero()) return false;
  }
  return true;
}

bool LambdaMap::galois_compatible() const {
  const int e = G.exponent();
  for (int chi = 0; chi < G.order(); ++chi)
    for (int s = 1; s < e; ++s) {
      if (std::gcd(s, e) != 1) continue;
      if (blocks[G.char_pow(chi, s)] != galois_block(blocks[chi], s)) return false;
    }
  return true;
}

LambdaMap random_lambda(const FiniteAbelianGroup& G, const std::vector<CharacterSpaces>& S,
                        unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  LambdaMap L;
  L.G = G;
  L.blocks.assign(G.order(), KMatrix());
  std::vector<bool> done(G.order(), false);
  const int e = G.exponent();
  for (int chi = 0; chi < G.order(); ++chi) {
    if (done[chi]) continue;
    const std::size_t r = S[chi].h1.size();
    if (S[chi].h2.size() != r)
      throw std::invalid_argument("lambda: H^1 and H^2 have different dimensions");
    const int m = G.element_order(chi);
    KMatrix B(r, r);
    do {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          Cyc v(coef(rng));
          if (m > 2) v += Cyc::zeta(m, 1) * Cyc(coef(rng));
          B(i, j) = v;
        }
    } while (r > 0 && det(B).is_zero());
    for (int s = 1; s <= e; ++s) {
      if (std::gcd(s, e) != 1) continue;
      int psi = G.char_pow(chi, s);
      if (done[psi]) continue;
      L.blocks[psi] = galois_block(B, s);
      done[psi] = true;
    }
  }
  return L;
}

LambdaMap transport_lambda(const LambdaMap& lam, const std::vector<CharacterSpaces>& from,
                           const std::vector<CharacterSpaces>& to,
                           const std::function<KVec(int, const KVec&)>& h1_to_source,
                           const std::function<KVec(int, const KVec&)>& h2_to_target) {
  LambdaMap L;
  L.G = lam.G;
  for (const auto& t : to) {
    const int chi = t.chi;
    const auto& f = from[chi];
    KMatrix B(t.h2.size(), t.h1.size());
    for (std::size_t i = 0; i < t.h1.size(); ++i) {
      auto c = f.h1_coordinates(h1_to_source(chi, t.h1[i]));
      if (!c) throw std::invalid_argument("transport: image is not a cocycle");
      KVec lc = lam.blocks[chi].apply(*c);
      KVec w = combination(f.h2, lc, f.d1.rows());
      auto coords = t.h2_coordinates(h2_to_target(chi, w));
      if (!coords) throw std::invalid_argument("transport: image is not a cocycle");
      for (std::size_t j = 0; j < coords->size(); ++j) B(j, i) = (*coords)[j];
    }
    L.blocks.push_back(B);
  }
  return L;
}

// --- theta -------------------------------------------------------------------------

ThetaResult theta_det(const ThreeTermComplex& C, const std::vector<CharacterSpaces>& S,
                      const LambdaMap& lam) {
  ThetaResult T;
  for (const auto& s : S) {
    require_defined(s, lam);
    T.values.push_back(theta_from_bases(s, lambda_lifts(s, lam.blocks[s.chi]), s.w1, s.w2));
  }
  T.choice_independent = theta_values_perturbed(S, lam, 7) == T.values;
  T.u = assemble(C.G, T.values, "theta_det");
  T.lattice = IdealLattice::generated_by(C.G, {T.u});
  return T;
}

ThetaResult theta_det(const StrictComplex& C, const LambdaMap& lam) {
  ThreeTermComplex T = ThreeTermComplex::from_strict(C);
  return theta_det(T, character_spaces(T), lam);
}

std::vector<Cyc> theta_values_perturbed(const std::vector<CharacterSpaces>& S,
                                        const LambdaMap& lam, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::vector<Cyc> out;
  for (const auto& s : S) {
    require_defined(s, lam);
    const std::size_t s1 = s.d1.cols(), s2 = s.d1.rows();
    // W1 -> 2 W1 + (cocycles), lifts -> lifts + (coboundaries), W2 -> 3 W2 + (cocycles).
    std::vector<KVec> z1 = columns_of(s.d0);
    z1.insert(z1.end(), s.h1.begin(), s.h1.end());
    std::vector<KVec> z2 = columns_of(s.d1);
    z2.insert(z2.end(), s.h2.begin(), s.h2.end());
    auto perturb = [&](std::vector<KVec> ws, const std::vector<KVec>& add, long scale,
                       std::size_t n) {
      for (auto& w : ws) {
        for (auto& c : w) c *= Cyc(scale);
        for (const auto& v : add) {
          Cyc t(coef(rng));
          for (std::size_t k = 0; k < n; ++k) w[k] += t * v[k];
        }
      }
      return ws;
    };
    std::vector<KVec> lifts = perturb(lambda_lifts(s, lam.blocks[s.chi]), columns_of(s.d1), 1, s2);
    out.push_back(theta_from_bases(s, lifts, perturb(s.w1, z1, 2, s1), perturb(s.w2, z2, 3, s2)));
  }
  return out;
}

QG characteristic_element(const StrictComplex& C, const LambdaMap& lam) {
  return theta_det(C, lam).u;
}

std::optional<QG> qg_inverse(const QG& x) {
  std::vector<Cyc> v = char_coords(x);
  for (auto& c : v) {
    if (c.is_zero()) return std::nullopt;
    c = c.inverse();
  }
  return rational_from_char_coords(x.group(), v);
}

IdealLattice involute(const IdealLattice& I) {
  const auto& G = I.group();
  std::vector<QG> gens;
  for (std::size_t r = 0; r < I.lattice().rank(); ++r)
    gens.push_back(qg_from_vec(G, I.lattice().basis_row(r)).involution());
  if (gens.empty()) return IdealLattice::zero(G);
  return IdealLattice::generated_by(G, gens);
}

// --- special elements ---------------------------------------------------------------

SpecialElement special_element(const StrictComplex& C, const std::vector<CharacterSpaces>& S,
                               const LambdaMap& lam, const QG& L, const ZGMatrix& X) {
  const auto& G = C.group();
  const std::size_t d = C.d();
  const int a = static_cast<int>(X.cols());
  if (X.rows() != d) throw std::invalid_argument("special_element: X must have d rows");
  SpecialElement out;
  out.a = a;
  out.d = d;
  std::vector<int> ranks;
  for (const auto& s : S) ranks.push_back(static_cast<int>(s.h1.size()));
  out.e_a = rank_idempotent(G, ranks, a);
  out.e_at_least = rank_idempotent_at_least(G, ranks, a);
  std::vector<Cyc> Lc = char_coords(L);
  const auto Is = subsets(static_cast<int>(d), a);
  std::vector<std::vector<Cyc>> coords(Is.size(), std::vector<Cyc>(G.order(), Cyc(0)));
  for (const auto& s : S) {
    if (ranks[s.chi] != a) continue;
    const KMatrix& B = lam.blocks.at(s.chi);
    if (B.rows() != static_cast<std::size_t>(a)) throw std::invalid_argument("special_element: lambda shape");
    if (Lc[s.chi].is_zero()) throw std::invalid_argument("special_element: L is not invertible");
    KMatrix Xc(a, a);
    KMatrix Xchi = X.at_character(s.chi);
    for (int i = 0; i < a; ++i) {
      auto c = s.h2_coordinates(Xchi.col(i));
      if (!c) throw std::invalid_argument("special_element: X is not in H^2");
      for (int j = 0; j < a; ++j) Xc(j, i) = (*c)[j];
    }
    Cyc detB = a == 0 ? Cyc(1) : det(B);
    if (detB.is_zero()) throw std::invalid_argument("special_element: lambda is not an isomorphism");
    Cyc c = (a == 0 ? Cyc(1) : det(Xc)) / (Lc[s.chi] * detB);
    if (c.is_zero()) continue;
    KMatrix H = cols_matrix(s.h1, d);
    for (std::size_t t = 0; t < Is.size(); ++t) {
      std::vector<std::size_t> rows(Is[t].begin(), Is[t].end());
      Cyc p = a == 0 ? Cyc(1) : det(H.select_rows(rows));
      coords[t][s.chi] = c * p;
    }
  }
  for (std::size_t t = 0; t < Is.size(); ++t) out.eta.push_back(assemble(G, coords[t], "special_element"));
  return out;
}

SpecialElement special_element(const StrictComplex& C, const LambdaMap& lam, const QG& L,
                               const ZGMatrix& X) {
  return special_element(C, character_spaces(C), lam, L, X);
}

std::vector<QG> eta_minor_formula(const AdaptedBasis& B, const QG& u, const QG& L) {
  if (!B.ok) throw std::invalid_argument("eta_minor_formula: no adapted basis");
  const auto& G = B.complex.group();
  const int d = static_cast<int>(B.complex.d());
  const int a = static_cast<int>(B.X.cols());
  auto Linv = qg_inverse(L);
  if (!Linv) throw std::invalid_argument("eta_minor_formula: L is not invertible");
  QG z = u * *Linv * to_rational(zg_det(B.V));
  std::vector<std::size_t> lower;
  for (int i = a; i < d; ++i) lower.push_back(i);
  ZGMatrix low = B.psi_adapted.select_rows(lower);
  std::vector<QG> eta;
  for (const auto& I : subsets(d, a)) {
    std::vector<int> perm(I.begin(), I.end());
    std::vector<std::size_t> comp;
    for (int k = 0; k < d; ++k)
      if (std::find(I.begin(), I.end(), k) == I.end()) {
        comp.push_back(k);
        perm.push_back(k);
      }
    ZG minor = zg_det(low.select_columns(comp));
    QG term = z * to_rational(minor);
    eta.push_back(permutation_sign(perm) > 0 ? term : -term);
  }
  return eta;
}

std::vector<QG> pad_wedge(const std::vector<QG>& eta, std::size_t d, std::size_t k, int a) {
  if (eta.empty()) return eta;
  const auto& G = eta[0].group();
  const int D = static_cast<int>(d + k);
  std::vector<QG> out(binomial(D, a), QG(G));
  auto Is = subsets(static_cast<int>(d), a);
  for (std::size_t t = 0; t < Is.size(); ++t) out[subset_index(D, Is[t])] = eta[t];
  return out;
}

IdealLattice evaluation_lattice(const std::vector<QG>& eta, const GLattice& H1, int a) {
  return functional_ideal(H1, a, eta);
}

// --- Containment checks ------------------------------------------------------------------

ZG default_x(const Idempotent& e) { return to_integral(e.e.scaled(mpq_class(e.N))); }

bool CharelsReport::ok() const {
  return x_valid && fit_inclusion && ann_inclusion && (!separable || (e_at_least_one && fit_equality)) &&
         x_eta_integral && integrality_all;
}

CharelsReport check_charels(const StrictComplex& C, const LambdaMap& lam, const QG& L,
                            const ZGMatrix& X, const std::optional<ZG>& x_in,
                            const std::optional<ZGMatrix>& quotient_relations) {
  const auto& G = C.group();
  CharelsReport R;
  auto S = character_spaces(C);
  CohomologyData H = cohomology(C);
  SpecialElement se = special_element(C, S, lam, L, X);
  R.a = se.a;
  ZG x = x_in ? *x_in : default_x(se.e_at_least);
  R.x = to_rational(x);
  R.x_valid = true;
  auto xc = char_coords(x);
  for (int chi = 0; chi < G.order(); ++chi)
    if (!se.e_at_least.support[chi] && !xc[chi].is_zero()) R.x_valid = false;
  if (!R.x_valid) R.witness = "x is not in Z[G] e_(a)";

  R.I_eta = evaluation_lattice(se.eta, *H.H1_lattice, se.a);
  R.fit = fitting_ideal(H.H2_presented, se.a);
  IdealLattice xI = R.I_eta.times(R.x);
  R.fit_inclusion = R.fit.contains(xI);
  PresentedModule H2q = H.H2_presented;
  if (quotient_relations) {
    if (quotient_relations->cols() != H2q.generators)
      throw std::invalid_argument("check_charels: quotient relations have the wrong width");
    ZGMatrix rel(G, H2q.relations.rows() + quotient_relations->rows(), H2q.generators);
    for (std::size_t i = 0; i < H2q.relations.rows(); ++i)
      for (std::size_t j = 0; j < H2q.generators; ++j) rel(i, j) = H2q.relations(i, j);
    for (std::size_t i = 0; i < quotient_relations->rows(); ++i)
      for (std::size_t j = 0; j < H2q.generators; ++j)
        rel(H2q.relations.rows() + i, j) = (*quotient_relations)(i, j);
    H2q.relations = rel;
  }
  R.ann_inclusion = torsion_annihilator(H2q).contains(xI);

  R.separable = separability_test(C.psi, X).separable;
  if (R.separable) {
    R.e_at_least_one = se.e_at_least.e == QG::one(G);
    R.fit_equality = R.I_eta == R.fit;
  }

  ZLattice bid = bidual(*H.H1_lattice, se.a);
  std::vector<QG> xeta;
  for (const auto& c : se.eta) xeta.push_back(R.x * c);
  R.x_eta_integral = bid.contains(flatten(xeta));
  R.integrality_all = true;
  for (const auto& Ssub : subsets(static_cast<int>(C.d()), se.a)) {
    std::vector<std::size_t> idx(Ssub.begin(), Ssub.end());
    ZGMatrix XS = ZGMatrix::identity(G, C.d()).select_columns(idx);
    SpecialElement es = special_element(C, S, lam, L, XS);
    std::vector<QG> v;
    for (const auto& c : es.eta) v.push_back(R.x * c);
    if (!bid.contains(flatten(v))) {
      R.integrality_all = false;
      break;
    }
  }
  if (R.witness.empty() && !R.ok()) R.witness = "a containment failed";
  return R;
}

PairingReport pairing(const StrictComplex& C, const LambdaMap& lam, const QG& L,
                      const ZGMatrix& X, const std::optional<ZG>& x_in) {
  const auto& G = C.group();
  const int n = G.order();
  PairingReport P;
  auto S = character_spaces(C);
  CohomologyData H = cohomology(C);
  SpecialElement se = special_element(C, S, lam, L, X);
  const int a = se.a;
  ZG x = x_in ? *x_in : default_x(se.e_at_least);
  QG xq = to_rational(x);
  auto xc = char_coords(x);
  auto ec = char_coords(se.e_a.e);
  for (int chi = 0; chi < n; ++chi)
    if (!ec[chi].is_zero() && xc[chi].is_zero())
      throw std::invalid_argument("pairing: x e_a is not invertible in Q[G] e_a");

  std::vector<QG> et;
  for (const auto& c : se.eta) et.push_back(xq * c);
  const std::size_t width = binomial(static_cast<int>(C.d()), a) * n;
  ZLattice B = bidual(*H.H1_lattice, a);
  ZLattice Seta = zg_span(G, width, {flatten(et)});
  if (!B.contains(Seta)) {
    P.witness = "x eta is not in the exterior bidual";
    return P;
  }
  ZLattice left_big = intersect_with_span(B, Seta);
  P.left = left_big.quotient_invariants(Seta);
  P.left_generators = left_big.quotient_generators(Seta);

  ZLattice ea_span = idempotent_span(G, se.e_a.e);
  ZLattice right_big = intersect_with_span(ZLattice::standard(n), ea_span);
  IdealLattice I = evaluation_lattice(se.eta, *H.H1_lattice, a);
  ZLattice xI = I.times(xq).lattice();
  if (!right_big.contains(xI)) {
    P.witness = "x I(eta) is not contained in Z[G]^{e_a}";
    return P;
  }
  P.right = right_big.quotient_invariants(xI);
  for (const auto& v : right_big.quotient_generators(xI)) P.right_generators.push_back(QG(G, v));

  // c(u) with u = c(u) x eta, character by character.
  std::vector<std::vector<Cyc>> etc;
  for (const auto& c : et) etc.push_back(char_coords(c));
  auto c_of = [&](const QVec& u) {
    auto parts = unflatten(G, u);
    std::vector<Cyc> v(n, Cyc(0));
    for (int chi = 0; chi < n; ++chi) {
      if (ec[chi].is_zero()) continue;
      for (std::size_t t = 0; t < parts.size(); ++t) {
        if (etc[t][chi].is_zero()) continue;
        v[chi] = char_coords(parts[t])[chi] / etc[t][chi];
        break;
      }
    }
    return assemble(G, v, "pairing");
  };
  auto value = [&](const QVec& u, const QG& w) { return (w * c_of(u))[0]; };
  auto frac = [](mpq_class q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return mpq_class(q - f);
  };

  P.well_defined = true;
  for (std::size_t i = 0; i < Seta.rank() && P.well_defined; ++i)
    for (const auto& w : P.right_generators)
      if (frac(value(Seta.basis_row(i), w)) != 0) P.well_defined = false;
  for (const auto& u : P.left_generators)
    for (std::size_t j = 0; j < xI.rank() && P.well_defined; ++j)
      if (frac(value(u, QG(G, xI.basis_row(j)))) != 0) P.well_defined = false;

  const std::size_t l = P.left_generators.size(), m = P.right_generators.size();
  P.matrix = QMatrix(l, m);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < m; ++j) P.matrix(i, j) = frac(value(P.left_generators[i], P.right_generators[j]));

  // Left kernel of the induced map to the dual: {c : c P integral}.
  bool injective = true;
  if (l > 0) {
    mpz_class D = 1;
    for (std::size_t i = 0; i < l; ++i) {
      mpz_class di = common_denominator(P.matrix.row(i));
      mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), di.get_mpz_t());
    }
    IntMatrix M(l + m, m);
    for (std::size_t i = 0; i < l; ++i) M.set_row(i, scale_to_integers(P.matrix.row(i), 1 * D / 1));
    for (std::size_t j = 0; j < m; ++j) M(l + j, j) = D;
    IntMatrix K = left_kernel(M);
    IntMatrix proj(K.rows(), l);
    for (std::size_t r = 0; r < K.rows(); ++r)
      for (std::size_t i = 0; i < l; ++i) proj(r, i) = K(r, i);
    IntMatrix diag(l, l);
    for (std::size_t i = 0; i < l; ++i) diag(i, i) = P.left.torsion[i];
    injective = ZLattice::from_rows(proj) == ZLattice::from_rows(diag);
  }
  P.perfect = P.well_defined && P.left.is_finite() && P.right.is_finite() &&
              P.left.torsion_order() == P.right.torsion_order() && injective;

  IdealLattice fit = fitting_ideal(H.H2_presented, a);
  ZLattice fit_ea = intersect_with_span(fit.lattice(), ea_span);
  if (fit_ea.contains(xI) && right_big.contains(fit_ea)) {
    P.seq_left = fit_ea.quotient_invariants(xI).torsion_order();
    P.seq_right = right_big.quotient_invariants(fit_ea).torsion_order();
    P.seq_middle = P.left.torsion_order();
    P.sequence_exact_orders = P.seq_left * P.seq_right == P.seq_middle;
  }
  if (!P.perfect && P.witness.empty()) P.witness = "pairing is not perfect";
  return P;
}

// --- the finite case -----------------------------------------------------------------

namespace {

// Dual lattice of L inside its own Q-span.
ZLattice dual_in_span(const ZLattice& L) {
  if (L.is_zero()) return L;
  QMatrix B = L.basis();
  auto inv = inverse(B * B.transpose());
  return ZLattice::from_rows(*inv * B, L.ambient_dim());
}

}  // namespace

IdealLattice dual_fitting_ideal(const Subquotient& M) {
  // Hom(N / Rel, Q/Z) = Rel^* / N^* with f_w(m) = w . m. Since g acts by a
  // permutation matrix, (g f_w)(m) = f_w(g m) = f_{g^-1 w}(m), so the
  // module is Rel^* / N^* with the action twisted by the involution.
  Subquotient D{M.G, M.d, dual_in_span(M.Rel), dual_in_span(M.N)};
  IdealLattice F = fitting_ideal(present_subquotient(D).module, 0);
  return involute(F);
}

FiniteCaseReport finite_case_identity(const ThreeTermComplex& D) {
  if (D.s3 != 0) throw std::invalid_argument("finite_case_identity: expected D0 -> D1 -> D2");
  FiniteCaseReport R;
  CohomologyData H = cohomology(D);
  AbelianInvariants h1 = H.H1.invariants(), h2 = H.H2.invariants();
  R.finite = h1.is_finite() && h2.is_finite() && H.H0.N.is_zero();
  if (!R.finite) throw std::invalid_argument("finite_case_identity: cohomology is not finite");
  auto S = character_spaces(D);
  LambdaMap zero = LambdaMap::canonical(D.G, S);
  ThetaResult T = theta_det(D, S, zero);
  R.u = T.u;
  auto uinv = qg_inverse(T.u);
  R.fit_dual = dual_fitting_ideal(H.H1);
  R.lhs = R.fit_dual.times(*uinv);
  R.rhs = fitting_ideal(H.H2_presented, 0);
  R.equal = R.lhs == R.rhs;
  return R;
}

// --- reduction (iii) -----------------------------------------------------------------

ReductionDetReport reduction_determinant_check(const ThreeTermComplex& C,
                                               const ReductionResult& Rd, unsigned seed) {
  ReductionDetReport R;
  if (!Rd.found) return R;
  const auto& G = C.G;
  auto SC = character_spaces(C);
  LambdaMap lam = random_lambda(G, SC, seed);
  ThetaResult TC = theta_det(C, SC, lam);
  ThreeTermComplex Cx = ThreeTermComplex::from_strict(Rd.Cx);
  auto SX = character_spaces(Cx);
  const std::size_t s1 = C.s1;
  LambdaMap lx = transport_lambda(
      lam, SC, SX,
      [s1](int, const KVec& v) { return KVec(v.begin(), v.begin() + s1); },
      [](int, const KVec& w) { return w; });
  ThetaResult TX = theta_det(Cx, SX, lx);
  R.u_C = TC.u;
  R.u_Cx = TX.u;
  auto inv = qg_inverse(to_rational(Rd.x) * TX.u);
  if (!inv) return R;
  R.ratio = TC.u * *inv;
  R.ok = is_integral(R.ratio) && zg_unit_inverse(to_integral(R.ratio)).has_value();
  return R;
}

}  // namespace hse
