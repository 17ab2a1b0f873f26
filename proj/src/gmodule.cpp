#include "hse/gmodule.hpp"

#include <stdexcept>

#include "hse/exterior.hpp"

namespace hse {

// --- GLattice ------------------------------------------------------------------

namespace {

IntMatrix coordinates_matrix(const ZLattice& L, const std::vector<QVec>& vs) {
  IntMatrix C(vs.size(), L.rank());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto c = L.coordinates(vs[i]);
    if (!c) throw std::logic_error("lattice is not stable under the group action");
    C.set_row(i, *c);
  }
  return C;
}

}  // namespace

GLattice GLattice::embedded(const FiniteAbelianGroup& G, std::size_t d, const ZLattice& L) {
  if (L.ambient_dim() != d * G.order()) throw std::invalid_argument("GLattice: ambient dimension");
  GLattice M;
  M.G = G;
  M.ambient_rank = d;
  M.embedding = L.basis();
  for (int g = 0; g < G.order(); ++g) {
    std::vector<QVec> moved;
    for (std::size_t k = 0; k < L.rank(); ++k) moved.push_back(shift_flat(G, L.basis_row(k), g));
    M.action.push_back(coordinates_matrix(L, moved));
  }
  return M;
}

GLattice GLattice::from_generators(const FiniteAbelianGroup& G, const std::vector<IntMatrix>& gens) {
  if (static_cast<int>(gens.size()) != G.rank())
    throw std::invalid_argument("GLattice: one action matrix per cyclic factor expected");
  const std::size_t n = gens.empty() ? 0 : gens[0].rows();
  GLattice M;
  M.G = G;
  for (int g = 0; g < G.order(); ++g) {
    auto r = G.element(g);
    IntMatrix A = IntMatrix::identity(n);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (int t = 0; t < r[i]; ++t) A = A * gens[i];
    M.action.push_back(A);
  }
  // Commutation and orders are implied by the construction only if the
  // generators themselves satisfy them.
  for (std::size_t i = 0; i < gens.size(); ++i) {
    IntMatrix P = IntMatrix::identity(n);
    for (int t = 0; t < G.factors()[i]; ++t) P = P * gens[i];
    if (P != IntMatrix::identity(n)) throw std::invalid_argument("GLattice: action order mismatch");
    for (std::size_t j = 0; j < i; ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i])
        throw std::invalid_argument("GLattice: action matrices do not commute");
  }
  if (n == 0) M.action.assign(G.order(), IntMatrix(0, 0));
  return M;
}

std::vector<IntMatrix> GLattice::generator_action() const {
  std::vector<IntMatrix> out;
  for (int i = 0; i < G.rank(); ++i) out.push_back(action[G.generator(i)]);
  return out;
}

ZLattice GLattice::lattice() const {
  if (!embedding) throw std::logic_error("GLattice: no embedding");
  return ZLattice::from_rows(*embedding, ambient_rank * G.order());
}

// --- IdealLattice --------------------------------------------------------------

IdealLattice::IdealLattice(const FiniteAbelianGroup& G, ZLattice L) : G_(G), L_(std::move(L)) {
  if (L_.ambient_dim() != static_cast<std::size_t>(G.order()))
    throw std::invalid_argument("ideal: dimension must equal |G|");
  if (!is_g_stable(G, L_)) throw std::invalid_argument("ideal: lattice is not G-stable");
}

IdealLattice IdealLattice::zero(const FiniteAbelianGroup& G) { return IdealLattice(G, ZLattice(G.order())); }
IdealLattice IdealLattice::unit(const FiniteAbelianGroup& G) {
  return IdealLattice(G, ZLattice::standard(G.order()));
}

IdealLattice IdealLattice::generated_by(const FiniteAbelianGroup& G, const std::vector<QG>& gens) {
  std::vector<QVec> vs;
  for (const auto& x : gens)
    if (!x.is_zero()) vs.push_back(x.coeffs());
  return IdealLattice(G, zg_span(G, G.order(), vs));
}

bool IdealLattice::contains(const QG& x) const { return L_.contains(x.coeffs()); }

IdealLattice IdealLattice::times(const QG& x) const {
  std::vector<QG> gens;
  for (std::size_t i = 0; i < L_.rank(); ++i) gens.push_back(QG(G_, L_.basis_row(i)) * x);
  return generated_by(G_, gens);
}

IdealLattice IdealLattice::operator*(const IdealLattice& o) const {
  std::vector<QG> gens;
  for (std::size_t i = 0; i < L_.rank(); ++i)
    for (std::size_t j = 0; j < o.L_.rank(); ++j)
      gens.push_back(QG(G_, L_.basis_row(i)) * QG(G_, o.L_.basis_row(j)));
  return generated_by(G_, gens);
}

IdealLattice IdealLattice::operator+(const IdealLattice& o) const { return IdealLattice(G_, L_ + o.L_); }
IdealLattice IdealLattice::intersect(const IdealLattice& o) const {
  return IdealLattice(G_, L_.intersect(o.L_));
}

std::string IdealLattice::to_string() const { return L_.to_string(); }

// --- PresentedModule -----------------------------------------------------------

PresentedModule PresentedModule::cokernel(const ZGMatrix& A) {
  PresentedModule M;
  M.G = A.group();
  M.generators = A.rows();
  M.relations = A.transpose();
  return M;
}

ZLattice PresentedModule::relation_lattice() const {
  const std::size_t n = generators * G.order();
  if (relations.rows() == 0) return ZLattice(n);
  return ZLattice::from_rows(relations.transpose().restriction());
}

AbelianInvariants PresentedModule::invariants() const {
  return ZLattice::standard(generators * G.order()).quotient_invariants(relation_lattice());
}

// --- presentations of subquotients ---------------------------------------------

namespace {

// {c in Z^k : c * Phi in Rel} for rational Phi (k x n) and a lattice Rel.
ZLattice preimage(const QMatrix& Phi, const ZLattice& Rel) {
  const std::size_t k = Phi.rows(), n = Phi.cols();
  mpz_class D = Rel.denominator();
  for (std::size_t i = 0; i < k; ++i) {
    mpz_class di = common_denominator(Phi.row(i));
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), di.get_mpz_t());
  }
  IntMatrix S(k + Rel.rank(), n);
  for (std::size_t i = 0; i < k; ++i) S.set_row(i, scale_to_integers(Phi.row(i), D));
  for (std::size_t i = 0; i < Rel.rank(); ++i)
    S.set_row(k + i, scale_to_integers(Rel.basis_row(i), D));
  IntMatrix K = left_kernel(S);
  IntMatrix rows(K.rows(), k);
  for (std::size_t r = 0; r < K.rows(); ++r)
    for (std::size_t i = 0; i < k; ++i) rows(r, i) = K(r, i);
  ZLattice out = ZLattice::from_rows(rows);
  return out.ambient_dim() == k ? out : ZLattice(k);
}

QMatrix translates(const FiniteAbelianGroup& G, const std::vector<QVec>& gens, std::size_t n) {
  QMatrix Phi(0, n);
  for (const auto& t : gens)
    for (int g = 0; g < G.order(); ++g) Phi.append_row(shift_flat(G, t, g));
  return Phi;
}

}  // namespace

Presentation present_subquotient(const Subquotient& M) {
  const auto& G = M.G;
  const std::size_t n = M.d * G.order();
  std::vector<QVec> gens;
  ZLattice S = M.Rel;
  for (std::size_t i = 0; i < M.N.rank() && S != M.N; ++i) {
    QVec v = M.N.basis_row(i);
    if (S.contains(v)) continue;
    gens.push_back(v);
    S = S + zg_span(G, n, {v});
  }
  Presentation P;
  P.generator_images = gens;
  P.module.G = G;
  P.module.generators = gens.size();
  const std::size_t k = gens.size();
  if (k == 0) {
    P.module.relations = ZGMatrix(G, 0, 0);
    return P;
  }
  ZLattice K = preimage(translates(G, gens, n), M.Rel);
  std::vector<QVec> rel = zg_generators(G, K);
  P.module.relations = ZGMatrix(G, rel.size(), k);
  for (std::size_t r = 0; r < rel.size(); ++r) {
    auto parts = unflatten_int(G, scale_to_integers(rel[r], 1));
    for (std::size_t j = 0; j < k; ++j) P.module.relations(r, j) = parts[j];
  }
  return P;
}

// --- Fitting ideals and annihilators -------------------------------------------

IdealLattice fitting_ideal(const PresentedModule& M, int a) {
  const auto& G = M.G;
  if (a < 0) throw std::invalid_argument("fitting_ideal: a < 0");
  const int m = static_cast<int>(M.generators);
  const int s = static_cast<int>(M.relations.rows());
  const int k = m - a;
  if (k <= 0) return IdealLattice::unit(G);
  if (k > s) return IdealLattice::zero(G);
  std::vector<KMatrix> Qchi;
  for (int chi = 0; chi < G.order(); ++chi) Qchi.push_back(M.relations.at_character(chi));
  std::vector<QG> minors;
  for (const auto& R : subsets(s, k))
    for (const auto& C : subsets(m, k)) {
      std::vector<Cyc> v(G.order());
      bool zero = true;
      for (int chi = 0; chi < G.order(); ++chi) {
        KMatrix sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub(i, j) = Qchi[chi](R[i], C[j]);
        v[chi] = det(sub);
        if (!v[chi].is_zero()) zero = false;
      }
      if (zero) continue;
      auto x = rational_from_char_coords(G, v);
      if (!x || !is_integral(*x)) throw std::logic_error("fitting_ideal: minor is not integral");
      minors.push_back(*x);
    }
  return IdealLattice::generated_by(G, minors);
}

IdealLattice annihilator(const Subquotient& M) {
  const auto& G = M.G;
  const std::size_t n = M.d * G.order();
  ZLattice result = ZLattice::standard(G.order());
  for (const auto& t : zg_generators(G, M.N)) {
    if (M.Rel.contains(t)) continue;
    result = result.intersect(preimage(translates(G, {t}, n), M.Rel));
  }
  return IdealLattice(G, result);
}

IdealLattice annihilator(const PresentedModule& M) {
  Subquotient S{M.G, M.generators, ZLattice::standard(M.generators * M.G.order()),
                M.relation_lattice()};
  return annihilator(S);
}

IdealLattice torsion_annihilator(const PresentedModule& M) {
  ZLattice Rel = M.relation_lattice();
  Subquotient S{M.G, M.generators, Rel.saturation(), Rel};
  if (Rel.is_zero()) S.N = Rel;
  return annihilator(S);
}

TorsionDecomposition torsion_decomp(const PresentedModule& M) {
  const auto& G = M.G;
  const std::size_t n = M.generators * G.order();
  ZLattice Rel = M.relation_lattice();
  ZLattice Sat = Rel.is_zero() ? Rel : Rel.saturation();
  TorsionDecomposition out;
  AbelianInvariants inv = ZLattice::standard(n).quotient_invariants(Rel);
  out.torsion_invariants = inv.torsion;
  out.free_rank = inv.free_rank;
  out.torsion = Subquotient{G, M.generators, Sat, Rel};
  // M_tf = Z^n / Sat is realized as the image of v -> v K^T.
  IntMatrix K = Sat.is_zero() ? IntMatrix::identity(n) : right_kernel(Sat.basis_numerators());
  IntMatrix KT = K.transpose();
  ZLattice img = ZLattice::from_rows(KT);
  std::vector<IntMatrix> action;
  for (int g = 0; g < G.order(); ++g) {
    IntMatrix A(img.rank(), img.rank());
    for (std::size_t b = 0; b < img.rank(); ++b) {
      QVec target = img.basis_row(b);
      IntVec tv = scale_to_integers(target, 1);
      auto pre = solve_left(KT, tv);
      if (!pre) throw std::logic_error("torsion_decomp: preimage");
      IntVec moved = KT.left_apply(shift_flat(G, *pre, g));
      QVec mq(moved.begin(), moved.end());
      A.set_row(b, *img.coordinates(mq));
    }
    action.push_back(A);
  }
  out.torsion_free.G = G;
  out.torsion_free.action = action;
  return out;
}

// --- separability ---------------------------------------------------------------

SeparabilityResult separability_test(const ZGMatrix& rel, const ZGMatrix& X) {
  const auto& G = X.group();
  const std::size_t d = X.rows(), a = X.cols(), t = rel.cols();
  const int n = G.order();
  SeparabilityResult res;
  if (a == 0) {
    res.separable = true;
    res.retraction = ZGMatrix(G, 0, d);
    return res;
  }
  if (rel.rows() != d) throw std::invalid_argument("separability_test: shape");
  const std::size_t unknowns = a * d * n, outputs = a * (t + a) * n;
  IntMatrix C = IntMatrix::zeros(unknowns, outputs);
  for (std::size_t k = 0; k < a; ++k)
    for (std::size_t l = 0; l < d; ++l)
      for (int g = 0; g < n; ++g) {
        const std::size_t u = (k * d + l) * n + g;
        auto put = [&](std::size_t col_block, const ZG& x) {
          for (int h = 0; h < n; ++h)
            if (x[h] != 0) C(u, col_block * n + G.mul(g, h)) += x[h];
        };
        for (std::size_t j = 0; j < t; ++j) put(k * (t + a) + j, rel(l, j));
        for (std::size_t j = 0; j < a; ++j) put(k * (t + a) + t + j, X(l, j));
      }
  IntVec target(outputs, 0);
  for (std::size_t k = 0; k < a; ++k) target[(k * (t + a) + t + k) * n] = 1;
  auto sol = solve_left(C, target);
  if (!sol) {
    res.reason = "no G-equivariant retraction onto the span of X exists";
    return res;
  }
  ZGMatrix r(G, a, d);
  for (std::size_t k = 0; k < a; ++k)
    for (std::size_t l = 0; l < d; ++l)
      for (int g = 0; g < n; ++g) r(k, l)[g] = (*sol)[(k * d + l) * n + g];
  res.separable = true;
  res.retraction = r;
  return res;
}

// --- duals ------------------------------------------------------------------------

namespace {

// Dual basis vectors F_k in Q M with F_k . m_l = delta_kl.
QMatrix dual_basis(const QMatrix& B) {
  QMatrix gram = B * B.transpose();
  auto inv = inverse(gram);
  if (!inv) throw std::logic_error("dual_basis: degenerate Gram matrix");
  return *inv * B;
}

QVec involute_flat(const FiniteAbelianGroup& G, const QVec& v) {
  const std::size_t n = G.order();
  QVec out(v.size());
  for (std::size_t i = 0; i < v.size() / n; ++i)
    for (std::size_t h = 0; h < n; ++h) out[i * n + G.inv(h)] = v[i * n + h];
  return out;
}

}  // namespace

GLattice zg_dual(const GLattice& M) {
  GLattice D;
  D.G = M.G;
  for (const auto& A : M.action) D.action.push_back(A.transpose());
  if (M.embedding && M.zrank() == 0) {
    D.embedding = QMatrix(0, M.embedding->cols());
    D.ambient_rank = M.ambient_rank;
  } else if (M.embedding) {
    QMatrix F = dual_basis(*M.embedding);
    QMatrix E(F.rows(), F.cols());
    for (std::size_t k = 0; k < F.rows(); ++k) E.set_row(k, involute_flat(M.G, F.row(k)));
    D.embedding = E;
    D.ambient_rank = M.ambient_rank;
  }
  return D;
}

QVec transport_functional(const GLattice& M, const IntVec& f) {
  if (!M.embedding) throw std::logic_error("transport_functional: needs an embedding");
  QMatrix F = dual_basis(*M.embedding);
  QVec out(F.cols(), mpq_class(0));
  for (std::size_t k = 0; k < F.rows(); ++k)
    for (std::size_t j = 0; j < F.cols(); ++j) out[j] += f[k] * F(k, j);
  return out;
}

QG apply_functional(const FiniteAbelianGroup& G, const QVec& F, const QVec& v) {
  const std::size_t n = G.order();
  QG out(G);
  for (int g = 0; g < G.order(); ++g) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < v.size() / n; ++i)
      for (std::size_t h = 0; h < n; ++h)
        if (F[i * n + h] != 0) s += F[i * n + h] * v[i * n + G.mul(g, h)];
    out[g] = s;
  }
  return out;
}

std::vector<IntMatrix> equivariant_homs(const GLattice& M) {
  const auto& G = M.G;
  const std::size_t n = M.zrank();
  const int N = G.order();
  std::vector<IntMatrix> gens = M.generator_action();
  const std::size_t unknowns = n * N;
  IntMatrix C = IntMatrix::zeros(unknowns, std::max<std::size_t>(1, gens.size() * n * N));
  for (std::size_t t = 0; t < gens.size(); ++t) {
    const IntMatrix& A = gens[t];
    const int g = G.generator(static_cast<int>(t));
    for (std::size_t k = 0; k < n; ++k)
      for (int hp = 0; hp < N; ++hp) {
        const std::size_t col = (t * n + k) * N + hp;
        for (std::size_t l = 0; l < n; ++l)
          if (A(k, l) != 0) C(l * N + hp, col) += A(k, l);
        C(k * N + G.mul(G.inv(g), hp), col) -= 1;
      }
  }
  IntMatrix K = gens.empty() ? IntMatrix::identity(unknowns) : left_kernel(C);
  std::vector<IntMatrix> homs;
  for (std::size_t r = 0; r < K.rows(); ++r) {
    IntMatrix T(n, N);
    for (std::size_t k = 0; k < n; ++k)
      for (int h = 0; h < N; ++h) T(k, h) = K(r, k * N + h);
    homs.push_back(T);
  }
  return homs;
}

namespace {

IntVec flat_matrix(const IntMatrix& T) { return T.data(); }

// Right action of the regular representation on rows: (x R_g)[g h] = x[h].
IntMatrix shift_columns(const FiniteAbelianGroup& G, const IntMatrix& T, int g) {
  IntMatrix out(T.rows(), T.cols());
  for (std::size_t k = 0; k < T.rows(); ++k)
    for (int h = 0; h < G.order(); ++h) out(k, G.mul(g, h)) = T(k, h);
  return out;
}

bool unimodular_square(const IntMatrix& P) {
  return P.rows() == P.cols() && abs(det(P)) == 1;
}

}  // namespace

ReflexivityReport reflexivity_check(const GLattice& M) {
  const auto& G = M.G;
  const std::size_t n = M.zrank();
  ReflexivityReport rep;
  auto homs = equivariant_homs(M);
  rep.hom_rank_ok = homs.size() == n;
  IntMatrix P(homs.size(), n);
  for (std::size_t j = 0; j < homs.size(); ++j)
    for (std::size_t k = 0; k < n; ++k) P(j, k) = homs[j](k, 0);
  rep.transport_bijective = unimodular_square(P);
  if (n == 0) {
    rep.transport_bijective = rep.evaluation_bijective = true;
    return rep;
  }
  // M* as an abstract lattice on the basis `homs`.
  IntMatrix H(homs.size(), n * G.order());
  for (std::size_t j = 0; j < homs.size(); ++j) H.set_row(j, flat_matrix(homs[j]));
  ZLattice HL = ZLattice::from_rows(H);
  auto coords_in = [](const ZLattice& L, const IntVec& v) {
    auto c = L.coordinates(QVec(v.begin(), v.end()));
    if (!c) throw std::logic_error("reflexivity_check: vector outside lattice");
    return *c;
  };
  // Use the HNF basis of the Hom lattice for M*.
  std::vector<IntMatrix> basis;
  for (std::size_t j = 0; j < HL.rank(); ++j) {
    IntVec v = scale_to_integers(HL.basis_row(j), 1);
    IntMatrix T(n, G.order());
    for (std::size_t k = 0; k < n; ++k)
      for (int h = 0; h < G.order(); ++h) T(k, h) = v[k * G.order() + h];
    basis.push_back(T);
  }
  GLattice Mstar;
  Mstar.G = G;
  for (int g = 0; g < G.order(); ++g) {
    IntMatrix A(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
      A.set_row(j, coords_in(HL, flat_matrix(shift_columns(G, basis[j], g))));
    Mstar.action.push_back(A);
  }
  auto homs2 = equivariant_homs(Mstar);
  IntMatrix H2(homs2.size(), basis.size() * G.order());
  for (std::size_t j = 0; j < homs2.size(); ++j) H2.set_row(j, flat_matrix(homs2[j]));
  ZLattice HL2 = ZLattice::from_rows(H2);
  IntMatrix Ev(n, HL2.rank());
  for (std::size_t k = 0; k < n; ++k) {
    IntMatrix E(basis.size(), G.order());
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (int h = 0; h < G.order(); ++h) E(j, h) = basis[j](k, h);
    auto c = HL2.coordinates(QVec(E.data().begin(), E.data().end()));
    if (!c) return rep;
    Ev.set_row(k, *c);
  }
  rep.evaluation_bijective = unimodular_square(Ev);
  return rep;
}

}  // namespace hse
