#include "hse/complexes.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hse/exterior.hpp"

namespace hse {

namespace {

ZLattice rowspan(const IntMatrix& R, std::size_t width) {
  if (R.rows() == 0) return ZLattice(width);
  return ZLattice::from_rows(R);
}

ZLattice left_kernel_lattice(const IntMatrix& R) {
  if (R.cols() == 0) return ZLattice::standard(R.rows());
  IntMatrix K = left_kernel(R);
  if (K.rows() == 0) return ZLattice(R.rows());
  return ZLattice::from_rows(K);
}

// Z-basis rows of the image of a Z[G]-matrix in flattened coordinates.
ZLattice image_lattice(const ZGMatrix& A) {
  return rowspan(A.restriction(), A.rows() * A.group().order());
}

ZLattice kernel_lattice(const ZGMatrix& A) { return left_kernel_lattice(A.restriction()); }

std::size_t krank(const std::vector<KVec>& vs, std::size_t n) {
  if (vs.empty()) return 0;
  return rank(from_columns(vs, n));
}

std::vector<KVec> concat(std::vector<KVec> a, const std::vector<KVec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// First r coordinates of v in the (spanning) family basis ++ rest.
std::optional<KVec> leading_coordinates(const std::vector<KVec>& basis,
                                        const std::vector<KVec>& rest, const KVec& v) {
  const std::size_t n = v.size();
  auto all = concat(basis, rest);
  if (all.empty()) {
    for (const auto& c : v)
      if (!c.is_zero()) return std::nullopt;
    return KVec{};
  }
  auto sol = solve(from_columns(all, n), v);
  if (!sol) return std::nullopt;
  return KVec(sol->begin(), sol->begin() + basis.size());
}

ZGMatrix zero_matrix(const FiniteAbelianGroup& G, std::size_t r, std::size_t c) {
  return ZGMatrix(G, r, c);
}

ZGMatrix hcat(const ZGMatrix& A, const ZGMatrix& B) {
  if (A.rows() != B.rows()) throw std::invalid_argument("hcat: height");
  ZGMatrix M(A.group(), A.rows(), A.cols() + B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) M(i, j) = A(i, j);
    for (std::size_t j = 0; j < B.cols(); ++j) M(i, A.cols() + j) = B(i, j);
  }
  return M;
}

bool rationally_zero_divisor_free(const ZG& x) {
  for (const auto& c : char_coords(x))
    if (c.is_zero()) return false;
  return true;
}

// Order of the class of v in Q^n / L for a full-rank lattice L.
mpz_class class_order(const ZLattice& L, const QVec& v) {
  auto inv = inverse(L.basis());
  if (!inv) throw std::logic_error("class_order: lattice not of full rank");
  QVec c = inv->left_apply(v);
  return common_denominator(c);
}

// x * v for x in Z[G] and v in Z[G]^s flattened.
QVec multiply_flat(const ZG& x, const QVec& v) {
  const auto& G = x.group();
  QVec out(v.size(), 0);
  for (int g = 0; g < G.order(); ++g) {
    if (x[g] == 0) continue;
    QVec s = shift_flat(G, v, g);
    for (std::size_t k = 0; k < v.size(); ++k) out[k] += mpq_class(x[g]) * s[k];
  }
  return out;
}

mpz_class prime_part(mpz_class n, long p) {
  mpz_class out = 1;
  if (p <= 1) return out;
  while (n != 0 && n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

bool prime_to(const mpz_class& n, long p) { return p <= 1 ? n == 1 : n % p != 0; }

}  // namespace

// --- shapes ---------------------------------------------------------------------

void StrictComplex::validate() const {
  if (psi.rows() != psi.cols()) throw std::invalid_argument("strict complex: psi must be square");
}

ThreeTermComplex ThreeTermComplex::make(const ZGMatrix& d1, const ZGMatrix& d2) {
  return with_degree_zero(zero_matrix(d1.group(), d1.cols(), 0), d1, d2);
}

ThreeTermComplex ThreeTermComplex::with_degree_zero(const ZGMatrix& d0, const ZGMatrix& d1,
                                                    const ZGMatrix& d2) {
  ThreeTermComplex C;
  C.G = d1.group();
  C.s0 = d0.cols();
  C.s1 = d1.cols();
  C.s2 = d1.rows();
  C.s3 = d2.rows();
  C.d0 = d0;
  C.d1 = d1;
  C.d2 = d2;
  C.validate();
  return C;
}

ThreeTermComplex ThreeTermComplex::from_strict(const StrictComplex& C) {
  C.validate();
  const auto& G = C.group();
  return make(C.psi, zero_matrix(G, 0, C.d()));
}

void ThreeTermComplex::validate() const {
  if (d0.rows() != s1 || d0.cols() != s0 || d1.rows() != s2 || d1.cols() != s1 ||
      d2.rows() != s3 || d2.cols() != s2)
    throw std::invalid_argument("three-term complex: shape mismatch");
  if (s0 + s2 != s1 + s3)
    throw std::invalid_argument("three-term complex: Euler characteristic is not zero");
  if (!(d1 * d0).is_zero() || !(d2 * d1).is_zero())
    throw std::invalid_argument("three-term complex: composite differential is not zero");
}

// --- character spaces ----------------------------------------------------------------

std::vector<KVec> standard_vectors(std::size_t n) {
  std::vector<KVec> out;
  for (std::size_t i = 0; i < n; ++i) {
    KVec v(n, Cyc(0));
    v[i] = Cyc(1);
    out.push_back(v);
  }
  return out;
}

std::vector<KVec> columns_of(const KMatrix& A) {
  std::vector<KVec> out;
  for (std::size_t j = 0; j < A.cols(); ++j) out.push_back(A.col(j));
  return out;
}

std::vector<KVec> greedy_complement(const std::vector<KVec>& base,
                                    const std::vector<KVec>& candidates, std::size_t n) {
  std::vector<KVec> cur = base, picked;
  std::size_t r = krank(cur, n);
  for (const auto& v : candidates) {
    cur.push_back(v);
    std::size_t rr = krank(cur, n);
    if (rr > r) {
      r = rr;
      picked.push_back(v);
    } else {
      cur.pop_back();
    }
  }
  return picked;
}

std::optional<KVec> CharacterSpaces::h1_coordinates(const KVec& v) const {
  return leading_coordinates(h1, columns_of(d0), v);
}

std::optional<KVec> CharacterSpaces::h2_coordinates(const KVec& v) const {
  return leading_coordinates(h2, columns_of(d1), v);
}

std::vector<CharacterSpaces> character_spaces(const ThreeTermComplex& C) {
  std::vector<CharacterSpaces> out;
  for (int chi = 0; chi < C.G.order(); ++chi) {
    CharacterSpaces S;
    S.chi = chi;
    S.d0 = C.d0.at_character(chi);
    S.d1 = C.d1.at_character(chi);
    S.d2 = C.d2.at_character(chi);
    auto k1 = kernel(S.d1);
    auto k2 = kernel(S.d2);
    auto im0 = columns_of(S.d0);
    auto im1 = columns_of(S.d1);
    S.h0_zero = krank(im0, C.s1) == C.s0;
    S.h1 = greedy_complement(im0, k1, C.s1);
    S.w1 = greedy_complement(k1, standard_vectors(C.s1), C.s1);
    S.h2 = greedy_complement(im1, k2, C.s2);
    S.w2 = greedy_complement(k2, standard_vectors(C.s2), C.s2);
    S.h3_zero = krank(columns_of(S.d2), C.s3) == C.s3;
    out.push_back(std::move(S));
  }
  return out;
}

std::vector<CharacterSpaces> character_spaces(const StrictComplex& C) {
  return character_spaces(ThreeTermComplex::from_strict(C));
}

// --- cohomology --------------------------------------------------------------------

std::vector<int> character_ranks(const StrictComplex& C) {
  C.validate();
  std::vector<int> r;
  for (int chi = 0; chi < C.group().order(); ++chi)
    r.push_back(static_cast<int>(C.d() - rank(C.psi.at_character(chi))));
  return r;
}

CohomologyData cohomology(const ThreeTermComplex& C) {
  C.validate();
  const auto& G = C.G;
  const std::size_t n = G.order();
  CohomologyData H;
  H.G = G;
  ZLattice K0 = kernel_lattice(C.d0), K1 = kernel_lattice(C.d1), K2 = kernel_lattice(C.d2);
  ZLattice I0 = image_lattice(C.d0), I1 = image_lattice(C.d1), I2 = image_lattice(C.d2);
  H.H0 = Subquotient{G, C.s0, K0, ZLattice(C.s0 * n)};
  H.H1 = Subquotient{G, C.s1, K1, I0};
  H.H2 = Subquotient{G, C.s2, K2, I1};
  H.H3 = Subquotient{G, C.s3, ZLattice::standard(C.s3 * n), I2};
  if (I0.is_zero()) H.H1_lattice = GLattice::embedded(G, C.s1, K1);
  if (C.s3 == 0) H.H2_presented = PresentedModule::cokernel(C.d1);
  else H.H2_presented = present_subquotient(H.H2).module;
  H.H3_presented = PresentedModule::cokernel(C.d2);
  for (int chi = 0; chi < G.order(); ++chi) {
    const int r0 = static_cast<int>(rank(C.d0.at_character(chi)));
    const int r1 = static_cast<int>(rank(C.d1.at_character(chi)));
    const int r2 = static_cast<int>(rank(C.d2.at_character(chi)));
    H.ranks.push_back(static_cast<int>(C.s1) - r1 - r0);
    H.h2_dims.push_back(static_cast<int>(C.s2) - r2 - r1);
    H.h3_dims.push_back(static_cast<int>(C.s3) - r2);
  }
  return H;
}

CohomologyData cohomology(const StrictComplex& C) {
  return cohomology(ThreeTermComplex::from_strict(C));
}

Idempotent rank_idempotent(const FiniteAbelianGroup& G, const std::vector<int>& ranks, int a) {
  return idempotent(G, support_equal(ranks, a));
}

Idempotent rank_idempotent_at_least(const FiniteAbelianGroup& G, const std::vector<int>& ranks,
                                    int a) {
  return idempotent(G, support_at_least(ranks, a));
}

// --- duality and cones -----------------------------------------------------------

StrictComplex dual_complex(const StrictComplex& C) {
  C.validate();
  return StrictComplex{C.psi.transpose()};
}

ConeResult cone_with_projective(const ThreeTermComplex& C, std::size_t p,
                                const ZGMatrix& theta1, const ZGMatrix& theta2) {
  C.validate();
  const auto& G = C.G;
  const std::size_t n = G.order();
  if (theta1.rows() != C.s1 || theta1.cols() != p || theta2.rows() != C.s2 ||
      theta2.cols() != p)
    throw std::invalid_argument("cone: theta shapes do not match the complex");
  if (!(C.d1 * theta1).is_zero() || !(C.d2 * theta2).is_zero())
    throw std::invalid_argument("cone: theta columns must be cocycles");

  ConeResult out;
  ZLattice K1 = kernel_lattice(C.d1), I0 = image_lattice(C.d0);
  ZLattice T1 = image_lattice(theta1);
  ZLattice S1 = T1 + I0;
  out.theta1_injective = S1.rank() == T1.rank() + I0.rank() && T1.rank() == p * n;
  AbelianInvariants cok1 = K1.quotient_invariants(S1);
  out.theta1_cokernel_torsion_free = cok1.torsion.empty();
  if (!out.theta1_injective) {
    out.witness = "theta1 has a nonzero kernel on H^1";
    return out;
  }
  if (!out.theta1_cokernel_torsion_free) {
    std::ostringstream os;
    os << "cokernel of theta1 has torsion of order " << cok1.torsion_order();
    out.witness = os.str();
    return out;
  }

  // D^0 = C^0 + P, D^1 = C^1 + P, D^2 = C^2, D^3 = C^3.
  ZGMatrix delta0(G, C.s1 + p, C.s0 + p);
  for (std::size_t i = 0; i < C.s1; ++i) {
    for (std::size_t j = 0; j < C.s0; ++j) delta0(i, j) = C.d0(i, j);
    for (std::size_t j = 0; j < p; ++j) delta0(i, C.s0 + j) = theta1(i, j);
  }
  ZGMatrix delta1 = hcat(C.d1, theta2);
  out.D = ThreeTermComplex::with_degree_zero(delta0, delta1, C.d2);

  CohomologyData HD = cohomology(out.D);
  CohomologyData HC = cohomology(C);
  // ker theta2 as a map P -> H^2(C).
  ZLattice I1 = image_lattice(C.d1), T2 = image_lattice(theta2);
  const std::size_t ker_theta2 = p * n - ((T2 + I1).rank() - I1.rank());
  AbelianInvariants h1 = HD.H1.invariants();
  out.les_h1 = h1.torsion.empty() && h1.free_rank == cok1.free_rank + ker_theta2 &&
               HD.H0.invariants() == HC.H0.invariants();
  ZLattice K2 = kernel_lattice(C.d2);
  out.les_h2 = HD.H2.Rel == I1 + T2 && HD.H2.invariants() == K2.quotient_invariants(I1 + T2);
  out.les_h3 = HD.H3.invariants() == HC.H3.invariants();
  if (!out.ok()) out.witness = "long exact sequence check failed";
  return out;
}

// --- determinants and inverses over Z[G] ------------------------------------------

ZG zg_det(const ZGMatrix& A) {
  const auto& G = A.group();
  const std::size_t n = A.rows();
  if (n != A.cols()) throw std::invalid_argument("zg_det: not square");
  if (n <= 6) {
    std::vector<std::vector<ZG>> m(n, std::vector<ZG>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = A(i, j);
    return ring_det(m, ZG::one(G));
  }
  std::vector<Cyc> v;
  for (int chi = 0; chi < G.order(); ++chi) v.push_back(det(A.at_character(chi)));
  return to_integral(*rational_from_char_coords(G, v));
}

std::optional<ZG> zg_unit_inverse(const ZG& x) {
  const auto& G = x.group();
  std::vector<Cyc> v = char_coords(x);
  for (auto& c : v) {
    if (c.is_zero()) return std::nullopt;
    c = c.inverse();
  }
  if (!integrality_test(G, v)) return std::nullopt;
  return to_integral(*rational_from_char_coords(G, v));
}

std::optional<ZGMatrix> zg_inverse(const ZGMatrix& A) {
  const auto& G = A.group();
  const std::size_t n = A.rows();
  if (n != A.cols()) throw std::invalid_argument("zg_inverse: not square");
  if (!zg_unit_inverse(zg_det(A))) return std::nullopt;
  std::vector<KMatrix> inv;
  for (int chi = 0; chi < G.order(); ++chi) inv.push_back(*inverse(A.at_character(chi)));
  ZGMatrix B(G, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Cyc> v;
      for (int chi = 0; chi < G.order(); ++chi) v.push_back(inv[chi](i, j));
      B(i, j) = to_integral(*rational_from_char_coords(G, v));
    }
  return B;
}

// --- reduction to strict ---------------------------------------------------------

ReductionResult reduce_to_strict(const ThreeTermComplex& C, long prime, int max_multiple) {
  C.validate();
  if (C.s0 != 0) throw std::invalid_argument("reduce_to_strict: expected no degree-zero term");
  const auto& G = C.G;
  const std::size_t n = G.order();
  ReductionResult R;
  R.mode = prime > 0 ? "p-local" : "global";

  ZLattice P3 = ZLattice::standard(C.s3 * n);
  ZLattice I2 = image_lattice(C.d2);
  AbelianInvariants h3 = P3.quotient_invariants(I2);
  if (!h3.is_finite()) {
    R.reason = "H^3 is not finite";
    return R;
  }
  const mpz_class h = h3.torsion_order();
  // In p-local mode only the p-part of |H^3| must be cleared; the prime-to-p
  // cofactor m is a unit locally and is absorbed into phi.
  const mpz_class hp = prime > 0 ? prime_part(h, prime) : h;
  const mpz_class m = h / hp;
  IntMatrix R2 = C.d2.restriction();

  for (int k = 1; k <= max_multiple && !R.found; ++k) {
    const mpz_class nn = hp * k;
    // c_j with d2 c_j = m * n * e_j.
    std::vector<std::vector<ZG>> c;
    bool ok = true;
    for (std::size_t j = 0; j < C.s3 && ok; ++j) {
      IntVec target(C.s3 * n, 0);
      target[j * n] = m * nn;
      auto sol = solve_left(R2, target);
      if (!sol) ok = false;
      else c.push_back(unflatten_int(G, *sol));
    }
    if (!ok) continue;
    for (const auto& S : subsets(static_cast<int>(C.s2), static_cast<int>(C.s3))) {
      ZGMatrix phi(G, C.s2, C.s3);
      for (std::size_t j = 0; j < C.s3; ++j) {
        for (std::size_t i = 0; i < C.s2; ++i) phi(i, j) = c[j][i];
        phi(S[j], j) += ZG::constant(G, m);
      }
      ZG x = zg_det(C.d2 * phi);
      if (!rationally_zero_divisor_free(x)) continue;
      R.found = true;
      R.x = x;
      R.phi = phi;
      R.n = nn;
      R.minor_columns.assign(S.begin(), S.end());
      R.Cx = StrictComplex{hcat(C.d1, phi)};
      break;
    }
  }
  if (!R.found) {
    R.reason = "no admissible (minor, n) pair within the search bound; retry in p-local mode";
    return R;
  }

  // (i) ker [d1 | phi] = ker d1 + 0.
  ZLattice Kx = kernel_lattice(R.Cx.psi);
  ZLattice K1 = kernel_lattice(C.d1);
  IntMatrix padded(K1.rank(), (C.s1 + C.s3) * n);
  for (std::size_t r = 0; r < K1.rank(); ++r) {
    IntVec row = scale_to_integers(K1.basis_row(r), 1);
    for (std::size_t k = 0; k < row.size(); ++k) padded(r, k) = row[k];
  }
  R.h1_equal = Kx == rowspan(padded, (C.s1 + C.s3) * n);

  // (ii) H^2(C) = ker d2 / im d1 maps injectively to P2 / (im d1 + im phi)
  // with cokernel P2 / (ker d2 + im d1 + im phi) killed by x.
  ZLattice K2 = kernel_lattice(C.d2), I1 = image_lattice(C.d1);
  ZLattice S = I1 + image_lattice(R.phi);
  ZLattice inter = K2.intersect(S);
  mpz_class inj_index = inter.quotient_invariants(I1).torsion_order();
  bool inj_finite = inter.quotient_invariants(I1).is_finite();
  ZLattice L = K2 + S;
  ZLattice P2 = ZLattice::standard(C.s2 * n);
  R.quotient = P2.quotient_invariants(L);
  bool killed = L.rank() == C.s2 * n;
  if (killed) {
    for (std::size_t i = 0; i < C.s2 * n && killed; i += n) {
      QVec e(C.s2 * n, 0);
      e[i] = 1;
      mpz_class ord = class_order(L, multiply_flat(R.x, e));
      killed = prime > 0 ? prime_to(ord, prime) : ord == 1;
    }
  }
  if (prime > 0) R.h2_finite_index = inj_finite && prime_to(inj_index, prime) && R.quotient.is_finite();
  else R.h2_finite_index = inj_finite && inj_index == 1 && R.quotient.is_finite();
  R.quotient_killed_by_x = killed;
  if (!R.h1_equal || !R.h2_finite_index || !R.quotient_killed_by_x)
    R.reason = "reduction checks failed";
  return R;
}

// --- adapted bases -------------------------------------------------------------------

StrictComplex stabilize(const StrictComplex& C, std::size_t k) {
  const auto& G = C.group();
  const std::size_t d = C.d();
  ZGMatrix psi(G, d + k, d + k);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) psi(i, j) = C.psi(i, j);
  for (std::size_t i = 0; i < k; ++i) psi(d + i, d + i) = ZG::one(G);
  return StrictComplex{psi};
}

AdaptedBasis adapted_basis(const StrictComplex& C, const ZGMatrix& X, unsigned seed,
                           bool allow_stabilization) {
  C.validate();
  const auto& G = C.group();
  const std::size_t d = C.d(), a = X.cols();
  if (X.rows() != d) throw std::invalid_argument("adapted_basis: X must have d rows");
  AdaptedBasis out;
  out.complex = C;
  out.X = X;
  SeparabilityResult sep = separability_test(C.psi, X);
  if (!sep.separable) {
    out.reason = "X is not separable: " + sep.reason;
    return out;
  }
  const ZGMatrix r = *sep.retraction;
  out.retraction = r;
  if (a == 0) {
    out.ok = true;
    out.V = out.Vinv = ZGMatrix::identity(G, d);
    out.psi_adapted = C.psi;
    return out;
  }
  // Columns of Pi = I - X r generate ker r, and [X | Pi Z'] is invertible
  // exactly when [X | Z'] is.
  ZGMatrix Pi = ZGMatrix::identity(G, d);
  ZGMatrix Xr = X * r;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) Pi(i, j) -= Xr(i, j);

  auto try_Z = [&](const ZGMatrix& Z) {
    ZGMatrix V = hcat(X, Z);
    if (!zg_unit_inverse(zg_det(V))) return false;
    out.V = V;
    out.Vinv = *zg_inverse(V);
    return true;
  };
  bool found = false;
  for (const auto& S : subsets(static_cast<int>(d), static_cast<int>(d - a))) {
    std::vector<std::size_t> idx(S.begin(), S.end());
    if (try_Z(Pi.select_columns(idx))) {
      found = true;
      break;
    }
  }
  std::mt19937 rng(seed);
  for (int t = 0; t < 200 && !found; ++t) {
    ZGMatrix M = random_unimodular_zg(G, d, rng);
    for (const auto& S : subsets(static_cast<int>(d), static_cast<int>(d - a))) {
      std::vector<std::size_t> idx(S.begin(), S.end());
      if (try_Z(Pi * M.select_columns(idx))) {
        found = true;
        break;
      }
    }
  }
  if (!found && allow_stabilization) {
    // On P + Z[G]^a take V = [[X, I - X r], [0, r]], with inverse
    // [[r, 0], [I - X r, X]]; the retraction becomes [r | 0].
    const std::size_t D = d + a;
    out.stabilized = a;
    out.complex = stabilize(C, a);
    out.X = ZGMatrix(G, D, a);
    out.V = ZGMatrix(G, D, D);
    out.Vinv = ZGMatrix(G, D, D);
    out.retraction = ZGMatrix(G, a, D);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < a; ++k) {
        out.X(i, k) = X(i, k);
        out.V(i, k) = X(i, k);
        out.Vinv(a + i, d + k) = X(i, k);
      }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        out.V(i, a + j) = Pi(i, j);
        out.Vinv(a + i, j) = Pi(i, j);
      }
    for (std::size_t k = 0; k < a; ++k)
      for (std::size_t j = 0; j < d; ++j) {
        out.V(d + k, a + j) = r(k, j);
        out.Vinv(k, j) = r(k, j);
        out.retraction(k, j) = r(k, j);
      }
    if (!(out.V * out.Vinv == ZGMatrix::identity(G, D)))
      throw std::logic_error("adapted_basis: stabilized transform is not inverse");
    found = true;
  }
  if (!found) {
    out.reason = "no free complement of X found over Z[G]; a p-local computation is needed";
    return out;
  }
  out.psi_adapted = out.Vinv * out.complex.psi;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < out.complex.d(); ++j)
      if (!out.psi_adapted(i, j).is_zero()) {
        out.reason = "transformed psi has a nonzero entry in the first rows";
        return out;
      }
  out.ok = true;
  return out;
}

// --- coinvariants -----------------------------------------------------------------

ZG project_element(const QuotientGroup& Q, const ZG& x) {
  ZG y(Q.quotient);
  for (int g = 0; g < x.group().order(); ++g) y[Q.projection[g]] += x[g];
  return y;
}

ZGMatrix project_matrix(const QuotientGroup& Q, const ZGMatrix& A) {
  ZGMatrix B(Q.quotient, A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) B(i, j) = project_element(Q, A(i, j));
  return B;
}

QVec norm_lift(const FiniteAbelianGroup& G, const QuotientGroup& Q, const QVec& v) {
  const std::size_t n = G.order(), q = Q.quotient.order();
  const std::size_t s = v.size() / q;
  QVec out(s * n);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t g = 0; g < n; ++g) out[i * n + g] = v[i * q + Q.projection[g]];
  return out;
}

CoinvariantResult coinvariants(const StrictComplex& C, const std::vector<int>& subgroup_gens) {
  C.validate();
  const auto& G = C.group();
  for (int g : subgroup_gens)
    if (g < 0 || g >= G.order()) throw std::invalid_argument("coinvariants: bad subgroup generator");
  CoinvariantResult out;
  out.quotient = quotient_group(G, subgroup_gens);
  const auto& Q = out.quotient;
  out.CJ = StrictComplex{project_matrix(Q, C.psi)};
  const std::size_t d = C.d(), n = G.order(), q = Q.quotient.order();

  // T_J(H^1(C_J)) against H^1(C) intersected with the J-fixed vectors.
  auto norm_image = [&](const ZLattice& L) {
    QMatrix rows(0, d * n);
    for (std::size_t r = 0; r < L.rank(); ++r) rows.append_row(norm_lift(G, Q, L.basis_row(r)));
    return rows.rows() == 0 ? ZLattice(d * n) : ZLattice::from_rows(rows, d * n);
  };
  ZLattice fixed = norm_image(ZLattice::standard(d * q));
  ZLattice lhs = norm_image(kernel_lattice(out.CJ.psi));
  out.h1_fixed_points = lhs == kernel_lattice(C.psi).intersect(fixed);

  // im psi + I_J P projects onto im psi_J, and the quotients agree.
  ZLattice S = image_lattice(C.psi);
  QMatrix aug(0, d * n);
  for (int j : Q.subgroup)
    for (std::size_t k = 0; k < d * n; ++k) {
      QVec e(d * n, 0), f(d * n, 0);
      e[k] = 1;
      f = shift_flat(G, e, j);
      for (std::size_t t = 0; t < d * n; ++t) f[t] -= e[t];
      aug.append_row(f);
    }
  if (aug.rows() > 0) S = S + ZLattice::from_rows(aug, d * n);
  QMatrix proj(0, d * q);
  for (std::size_t r = 0; r < S.rank(); ++r) {
    QVec v = S.basis_row(r), w(d * q, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t g = 0; g < n; ++g) w[i * q + Q.projection[g]] += v[i * n + g];
    proj.append_row(w);
  }
  ZLattice projected = proj.rows() == 0 ? ZLattice(d * q) : ZLattice::from_rows(proj, d * q);
  ZLattice target = image_lattice(out.CJ.psi);
  out.h2_coinvariants = projected == target &&
                        ZLattice::standard(d * n).quotient_invariants(S) ==
                            ZLattice::standard(d * q).quotient_invariants(target);
  return out;
}

}  // namespace hse
