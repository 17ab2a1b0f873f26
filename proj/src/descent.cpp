#include "hse/descent.hpp"

#include <random>
#include <stdexcept>

namespace hse {

namespace {

ZGMatrix identity_minus(const ZGMatrix& A) {
  ZGMatrix out = ZGMatrix::identity(A.group(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) out(i, j) -= A(i, j);
  return out;
}

ZGMatrix hcat(const ZGMatrix& A, const ZGMatrix& B) {
  ZGMatrix M(A.group(), A.rows(), A.cols() + B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) M(i, j) = A(i, j);
    for (std::size_t j = 0; j < B.cols(); ++j) M(i, A.cols() + j) = B(i, j);
  }
  return M;
}

ZGMatrix rows_of(const ZGMatrix& A, std::size_t from, std::size_t to) {
  std::vector<std::size_t> idx;
  for (std::size_t i = from; i < to; ++i) idx.push_back(i);
  return A.select_rows(idx);
}

QG project_qg(const QuotientGroup& Q, const QG& x) {
  QG y(Q.quotient);
  for (int g = 0; g < x.group().order(); ++g) y[Q.projection[g]] += x[g];
  return y;
}

ZLattice span_of(const std::vector<ZG>& xs, std::size_t n) {
  if (xs.empty()) return ZLattice(n);
  IntMatrix M(xs.size(), n);
  for (std::size_t i = 0; i < xs.size(); ++i) M.set_row(i, xs[i].coeffs());
  return ZLattice::from_rows(M);
}

int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

bool integral_vector(const std::vector<QG>& v) {
  for (const auto& x : v)
    if (!is_integral(x)) return false;
  return true;
}

// Some w with sum_i w_i c_i a trivial unit +-g, where each w_i ranges over
// the Z-span of {h * m : h in G, m in mult}.
std::optional<std::vector<ZG>> solve_for_unit(const std::vector<ZG>& c, const ZG& offset,
                                              const std::vector<ZG>& mult) {
  const auto& G = offset.group();
  const int n = G.order();
  IntMatrix A(c.size() * mult.size() * n, n);
  std::size_t row = 0;
  for (const auto& ci : c)
    for (const auto& m : mult)
      for (int h = 0; h < n; ++h) A.set_row(row++, (ZG::basis(G, h) * m * ci).coeffs());
  for (int g = 0; g < n; ++g)
    for (int sgn : {1, -1}) {
      auto sol = solve_left(A, (ZG::basis(G, g).scaled(sgn) - offset).coeffs());
      if (!sol) continue;
      std::vector<ZG> w(c.size(), ZG(G));
      row = 0;
      for (std::size_t i = 0; i < c.size(); ++i)
        for (const auto& m : mult)
          for (int h = 0; h < n; ++h) w[i] += (ZG::basis(G, h) * m).scaled((*sol)[row++]);
      return w;
    }
  return std::nullopt;
}

// Cofactors of column `col` of M: det M with that column replaced by e_i.
std::vector<ZG> column_cofactors(const ZGMatrix& M, std::size_t col) {
  std::vector<ZG> out;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    ZGMatrix Mi = M;
    for (std::size_t k = 0; k < M.rows(); ++k) Mi(k, col) = k == i ? ZG::one(M.group()) : ZG(M.group());
    out.push_back(zg_det(Mi));
  }
  return out;
}

}  // namespace

// --- augmentation quotients ----------------------------------------------------------

bool AugmentationQuotient::congruent(const ZG& x, const ZG& y) const {
  return Ik1.contains(flatten(std::vector<QG>{to_rational(x - y)}));
}

AugmentationQuotient augmentation_quotient(const FiniteAbelianGroup& G,
                                           const std::vector<int>& subgroup_gens, int k) {
  if (k < 0) throw std::invalid_argument("augmentation_quotient: k must be nonnegative");
  AugmentationQuotient A;
  A.G = G;
  A.k = k;
  A.subgroup = generated_subgroup(G, subgroup_gens);
  const std::size_t n = G.order();
  std::vector<ZG> cur;
  for (int j : A.subgroup) cur.push_back(ZG::basis(G, j));
  auto next = [&](const std::vector<ZG>& basis) {
    std::vector<ZG> out;
    for (const auto& v : basis)
      for (int j : A.subgroup)
        if (j != 0) out.push_back((ZG::basis(G, j) - ZG::one(G)) * v);
    ZLattice L = span_of(out, n);
    std::vector<ZG> b;
    for (std::size_t i = 0; i < L.rank(); ++i) b.push_back(to_integral(QG(G, L.basis_row(i))));
    return b;
  };
  for (int m = 0; m < k; ++m) cur = next(cur);
  A.Ik = span_of(cur, n);
  A.Ik1 = span_of(next(cur), n);
  A.invariants = A.Ik.quotient_invariants(A.Ik1);
  for (const auto& v : A.Ik.quotient_generators(A.Ik1)) A.generators.push_back(to_integral(QG(G, v)));
  return A;
}

bool augmentation_iso_check(const AugmentationQuotient& Q1) {
  if (Q1.k != 1 || !Q1.invariants.is_finite()) return false;
  if (Q1.invariants.torsion_order() != static_cast<long>(Q1.subgroup.size())) return false;
  const auto& G = Q1.G;
  for (std::size_t s = 0; s < Q1.subgroup.size(); ++s)
    for (std::size_t t = s + 1; t < Q1.subgroup.size(); ++t)
      if (Q1.congruent(ZG::basis(G, Q1.subgroup[s]), ZG::basis(G, Q1.subgroup[t]))) return false;
  // Additivity: (jk - 1) = (j - 1) + (k - 1) mod I^2.
  for (int j : Q1.subgroup)
    for (int l : Q1.subgroup) {
      ZG lhs = ZG::basis(G, G.mul(j, l)) - ZG::one(G);
      ZG rhs = ZG::basis(G, j) + ZG::basis(G, l) - ZG::one(G).scaled(2);
      if (!Q1.congruent(lhs, rhs)) return false;
    }
  return true;
}

// --- lifting ------------------------------------------------------------------------

ZG lift_element(const FiniteAbelianGroup& G, const QuotientGroup& Q, const ZG& c) {
  ZG out(G);
  for (int t = 0; t < Q.quotient.order(); ++t) out[Q.coset_reps[t]] += c[t];
  return out;
}

ZGMatrix lift_matrix(const FiniteAbelianGroup& G, const QuotientGroup& Q, const ZGMatrix& A) {
  ZGMatrix B(G, A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) B(i, j) = lift_element(G, Q, A(i, j));
  return B;
}

int inflate_character(const FiniteAbelianGroup& G, const QuotientGroup& Q, int chi) {
  const auto& H = Q.quotient;
  const long eG = G.exponent(), eH = H.exponent();
  for (int psi = 0; psi < G.order(); ++psi) {
    bool match = true;
    for (int g = 0; g < G.order() && match; ++g) {
      long lhs = static_cast<long>(G.char_exponent(psi, g)) * eH;
      long rhs = static_cast<long>(H.char_exponent(chi, Q.projection[g])) * eG;
      match = (lhs - rhs) % (eG * eH) == 0;
    }
    if (match) return psi;
  }
  throw std::logic_error("inflate_character: no matching character");
}

LambdaMap descend_lambda(const LambdaMap& lam, const FiniteAbelianGroup& G, const QuotientGroup& Q) {
  LambdaMap out;
  out.G = Q.quotient;
  for (int chi = 0; chi < Q.quotient.order(); ++chi)
    out.blocks.push_back(lam.blocks.at(inflate_character(G, Q, chi)));
  return out;
}

// --- the datum and its adapted basis -------------------------------------------------

DescentDatum make_descent_datum(const StrictComplex& C, const std::vector<int>& subgroup_gens,
                                const ZGMatrix& X, const ZGMatrix& Xp) {
  C.validate();
  DescentDatum D;
  D.C = C;
  D.subgroup_gens = subgroup_gens;
  D.X = X;
  D.Xp = Xp;
  D.quotient = quotient_group(C.group(), subgroup_gens);
  D.CJ = StrictComplex{project_matrix(D.quotient, C.psi)};
  D.a = static_cast<int>(X.cols());
  D.a_prime = D.a + static_cast<int>(Xp.cols());
  if (X.rows() != C.d() || Xp.rows() != C.d())
    throw std::invalid_argument("descent: X and X' must have d rows");
  if (!(Xp.group() == D.quotient.quotient))
    throw std::invalid_argument("descent: X' must be given over Z[G/J]");
  if (!separability_test(C.psi, X).separable)
    throw std::invalid_argument("descent: X is not separable in H^2(C)");
  ZGMatrix XJ = project_matrix(D.quotient, X);
  if (!separability_test(D.CJ.psi, hcat(XJ, Xp)).separable)
    throw std::invalid_argument("descent: X' is not separable in H^2(C_J)");
  return D;
}

DescentBasis descent_basis(const DescentDatum& D, int choice, unsigned seed) {
  const auto& G = D.C.group();
  const auto& Q = D.quotient;
  const std::size_t d = D.C.d(), a = D.a, ap = D.a_prime;
  DescentBasis B;
  // Retractions are unique: their rows span Hom(H^2(C), Z[G]). The choices
  // are the lift of X' modulo I(J) P and the completion.
  ZGMatrix r = *separability_test(D.C.psi, D.X).retraction;
  B.sigma_X = r;
  // Shear the lifts of X' \ X_J into ker sigma_X.
  ZGMatrix Pr = identity_minus(D.X * r);
  ZGMatrix Xt = Pr * lift_matrix(G, Q, D.Xp);
  ZGMatrix XJ = project_matrix(Q, D.X);
  B.Xp_effective = hcat(XJ, project_matrix(Q, Xt));
  auto sep = separability_test(D.CJ.psi, B.Xp_effective);
  if (!sep.separable) {
    B.reason = "sheared X' is not separable";
    return B;
  }
  ZGMatrix rho = *sep.retraction;
  B.sigma_Xp = rho;
  ZGMatrix rho2 = lift_matrix(G, Q, rows_of(rho, a, ap));
  std::mt19937 rng(seed + 7919u * choice);
  // choice 0 starts from the identity completion, others from a random one.
  const ZGMatrix Id = choice == 0 ? ZGMatrix::identity(G, d) : random_unimodular_zg(G, d, rng);
  // Any completion W0 of [X | x~'] is corrected by column operations:
  // W = (I - x~' rho~_2)(I - X r) W0 has r W = 0 and rho_2(W_J) = 0, and
  // [X | x~' | W] has the same determinant as [X | x~' | W0].
  auto install = [&](const ZGMatrix& Xt, const ZGMatrix& W0) {
    ZGMatrix Pi = identity_minus(Xt * rho2) * Pr;
    B.V = hcat(hcat(D.X, Xt), Pi * W0);
    B.Vinv = *zg_inverse(B.V);
    return true;
  };
  auto complete = [&](const ZGMatrix& Xt, int tries) {
    ZGMatrix head = hcat(D.X, Xt);
    if (d == ap) return zg_unit_inverse(zg_det(head)) ? install(Xt, ZGMatrix(G, d, 0)) : false;
    if (d == ap + 1) {
      // det[head | w] is linear in w.
      ZGMatrix M = hcat(head, ZGMatrix(G, d, 1));
      auto w = solve_for_unit(column_cofactors(M, ap), ZG(G), {ZG::one(G)});
      if (!w) return false;
      ZGMatrix W0(G, d, 1);
      for (std::size_t i = 0; i < d; ++i) W0(i, 0) = (*w)[i];
      return install(Xt, W0);
    }
    for (int t = 0; t <= tries; ++t) {
      ZGMatrix M = t == 0 ? Id : random_unimodular_zg(G, d, rng);
      for (const auto& S : subsets(static_cast<int>(d), static_cast<int>(d - ap))) {
        ZGMatrix W0 = M.select_columns(std::vector<std::size_t>(S.begin(), S.end()));
        if (zg_unit_inverse(zg_det(hcat(head, W0)))) return install(Xt, W0);
      }
      // All but the last completion column from M, the last one solved for.
      for (const auto& S : subsets(static_cast<int>(d), static_cast<int>(d - ap - 1))) {
        ZGMatrix W1 = M.select_columns(std::vector<std::size_t>(S.begin(), S.end()));
        ZGMatrix full = hcat(hcat(head, W1), ZGMatrix(G, d, 1));
        auto w = solve_for_unit(column_cofactors(full, d - 1), ZG(G), {ZG::one(G)});
        if (!w) continue;
        ZGMatrix W0 = hcat(W1, ZGMatrix(G, d, 1));
        for (std::size_t i = 0; i < d; ++i) W0(i, d - ap - 1) = (*w)[i];
        return install(Xt, W0);
      }
    }
    return false;
  };
  // The lift of X' is only determined modulo I(J) P. When the coset lift
  // does not extend to a basis, one of its columns c is corrected by e in
  // I(J) P: with everything else fixed, det[X | x~ + e E_c | W0] is affine in
  // e and hitting a trivial unit is an integer linear system. The other
  // columns are perturbed at random between rounds.
  std::vector<ZG> aug;
  for (int j : Q.subgroup)
    if (j != 0) aug.push_back(ZG::basis(G, j) - ZG::one(G));
  ZGMatrix base = lift_matrix(G, Q, D.Xp);
  if (choice > 0 && !aug.empty()) {
    for (std::size_t i = 0; i < base.rows(); ++i)
      for (std::size_t j = 0; j < base.cols(); ++j)
        base(i, j) += aug[rng() % aug.size()] * random_zg(G, rng, 1);
    Xt = Pr * base;
  }
  bool found = complete(Xt, 40);
  for (int t = 0; t < 60 && !found && ap > a && !aug.empty(); ++t) {
    ZGMatrix x = base;
    if (t > 0)
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
          if (rng() % 2) x(i, j) += aug[rng() % aug.size()] * random_zg(G, rng, 1 + t % 2);
    if (t > 0 && (found = complete(Pr * x, 0))) break;
    ZGMatrix M = t % 3 == 0 ? Id : random_unimodular_zg(G, d, rng);
    for (const auto& S : subsets(static_cast<int>(d), static_cast<int>(d - ap))) {
      ZGMatrix W0 = M.select_columns(std::vector<std::size_t>(S.begin(), S.end()));
      for (std::size_t c = 0; c < ap - a && !found; ++c) {
        ZGMatrix full = hcat(hcat(D.X, x), W0);
        auto e = solve_for_unit(column_cofactors(full, a + c), zg_det(full), aug);
        if (!e) continue;
        ZGMatrix y = x;
        for (std::size_t i = 0; i < d; ++i) y(i, c) += (*e)[i];
        Xt = Pr * y;
        found = install(Xt, W0);
      }
      if (found) break;
    }
  }
  if (!found) {
    B.reason = "[X | x'] has no unimodular completion over Z[G]; a p-local computation is needed";
    return B;
  }
  B.psi_adapted = B.Vinv * D.C.psi;
  for (std::size_t i = 0; i < ap; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const ZG& x = B.psi_adapted(i, j);
      if (i < a ? !x.is_zero() : !project_element(Q, x).is_zero()) {
        B.reason = "adapted psi violates the row conditions";
        return B;
      }
    }
  B.ok = true;
  return B;
}

// --- Bockstein, norm operator and nu -------------------------------------------------

std::vector<ZG> coset_components(const FiniteAbelianGroup& G, const QuotientGroup& Q, const ZG& y) {
  std::vector<ZG> out;
  for (int t = 0; t < Q.quotient.order(); ++t) {
    ZG c(G);
    for (int j : Q.subgroup) c[j] += y[G.mul(Q.coset_reps[t], j)];
    out.push_back(c);
  }
  return out;
}

BocksteinMap bockstein(const DescentDatum& D, const DescentBasis& B, int j, unsigned seed) {
  if (!B.ok) throw std::invalid_argument("bockstein: " + B.reason);
  if (j < 0 || D.a + j >= D.a_prime) throw std::invalid_argument("bockstein: index out of range");
  const auto& G = D.C.group();
  const auto& Q = D.quotient;
  const std::size_t d = D.C.d();
  BocksteinMap M;
  M.j = j;
  M.row = B.psi_adapted.row(D.a + j);
  AugmentationQuotient Q1 = augmentation_quotient(G, D.subgroup_gens, 1);
  CohomologyData H = cohomology(D.CJ);
  const ZLattice L = H.H1_lattice->lattice();
  std::mt19937 rng(seed);
  M.lift_independent = true;
  for (std::size_t b = 0; b < L.rank(); ++b) {
    auto c = unflatten(Q.quotient, L.basis_row(b));
    ZG y1(G), y2(G);
    for (std::size_t k = 0; k < d; ++k) {
      ZG ck = to_integral(c[k]);
      y1 += M.row[k] * lift_element(G, Q, ck);
      // A second lift: each coset representative moved by a random element of J.
      ZG alt(G);
      for (int t = 0; t < Q.quotient.order(); ++t)
        alt[G.mul(Q.coset_reps[t], Q.subgroup[rng() % Q.subgroup.size()])] += ck[t];
      y2 += M.row[k] * alt;
    }
    auto v1 = coset_components(G, Q, y1), v2 = coset_components(G, Q, y2);
    for (std::size_t t = 0; t < v1.size(); ++t)
      if (!Q1.in_Q(v1[t]) || !Q1.congruent(v1[t], v2[t])) M.lift_independent = false;
    M.values.push_back(v1);
  }
  return M;
}

JTensor norm_operator(const std::vector<QG>& eta, const QuotientGroup& Q) {
  if (!integral_vector(eta)) throw std::invalid_argument("norm_operator: eta is not integral");
  JTensor T;
  T.N = eta.size();
  if (eta.empty()) return T;
  const auto& G = eta[0].group();
  const int n = G.order();
  for (std::size_t t = 0; t < eta.size(); ++t)
    for (int g = 0; g < n; ++g) {
      ZG v(G);
      for (int s : Q.subgroup) {
        int si = G.inv(s);
        v[si] += eta[t][G.mul(si, g)].get_num();
      }
      T.values.push_back(v);
    }
  return T;
}

JTensor nu_embedding(const FiniteAbelianGroup& G, const QuotientGroup& Q,
                     const std::vector<std::vector<ZG>>& per_coset) {
  JTensor T;
  T.N = per_coset.size();
  for (const auto& row : per_coset)
    for (int g = 0; g < G.order(); ++g) T.values.push_back(row[Q.projection[g]]);
  return T;
}

bool nu_injective(const FiniteAbelianGroup& G, const QuotientGroup& Q, std::size_t N,
                  const AugmentationQuotient& Qk) {
  const std::size_t n = G.order(), q = Q.quotient.order();
  const std::size_t width = N * n * n;
  // Generators of the domain: one Q_k generator (or 1 when k = 0) at a
  // single (coordinate, coset) slot.
  std::vector<ZG> gens = Qk.generators;
  if (Qk.k == 0) gens = {ZG::one(G)};
  QMatrix img(0, width), rel(0, width);
  for (std::size_t t = 0; t < N; ++t)
    for (std::size_t s = 0; s < q; ++s)
      for (const auto& x : gens) {
        std::vector<std::vector<ZG>> pc(N, std::vector<ZG>(q, ZG(G)));
        pc[t][s] = x;
        JTensor T = nu_embedding(G, Q, pc);
        QVec v(width, 0);
        for (std::size_t i = 0; i < T.values.size(); ++i)
          for (std::size_t h = 0; h < n; ++h) v[i * n + h] = T.values[i][h];
        img.append_row(v);
      }
  for (std::size_t i = 0; i < N * n; ++i)
    for (std::size_t r = 0; r < Qk.Ik1.rank(); ++r) {
      QVec v(width, 0), b = Qk.Ik1.basis_row(r);
      for (std::size_t h = 0; h < n; ++h) v[i * n + h] = b[h];
      rel.append_row(v);
    }
  ZLattice R = rel.rows() ? ZLattice::from_rows(rel, width) : ZLattice(width);
  ZLattice big = (img.rows() ? ZLattice::from_rows(img, width) : ZLattice(width)) + R;
  AbelianInvariants image = big.quotient_invariants(R);
  const std::size_t copies = N * q;
  if (Qk.k == 0) return image.free_rank == copies && image.torsion.empty();
  mpz_class domain = 1;
  for (std::size_t i = 0; i < copies; ++i) domain *= Qk.invariants.torsion_order();
  return image.is_finite() && image.torsion_order() == domain;
}

bool norm_lands_in_nu_image(const FiniteAbelianGroup& G, const std::vector<int>& subgroup_gens,
                            std::size_t d, int a, int k) {
  QuotientGroup Q = quotient_group(G, subgroup_gens);
  AugmentationQuotient Qk = augmentation_quotient(G, subgroup_gens, k);
  const std::size_t N = binomial(static_cast<int>(d), a);
  const int n = G.order();
  for (std::size_t r = 0; r < Qk.Ik.rank(); ++r) {
    ZG y = to_integral(QG(G, Qk.Ik.basis_row(r)));
    for (int g = 0; g < n; ++g)
      for (std::size_t I = 0; I < N; ++I) {
        std::vector<QG> x(N, QG(G));
        x[I] = to_rational(ZG::basis(G, g) * y);
        JTensor T = norm_operator(x, Q);
        for (std::size_t t = 0; t < N; ++t)
          for (int h = 0; h < n; ++h) {
            const ZG& v = T.values[t * n + h];
            if (!Qk.in_Q(v)) return false;
            // Constant on cosets of J modulo I^{k+1}.
            const ZG& w = T.values[t * n + Q.coset_reps[Q.projection[h]]];
            if (!Qk.congruent(v, w)) return false;
          }
      }
  }
  return true;
}

// --- the congruence ------------------------------------------------------------------

MRSReport check_mrs(const DescentDatum& D, const LambdaMap& lam, const QG& L, int choices) {
  const auto& G = D.C.group();
  const auto& Q = D.quotient;
  const std::size_t d = D.C.d();
  const int a = D.a, ap = D.a_prime, k = ap - a;
  MRSReport R;
  R.a = a;
  R.a_prime = ap;
  R.k = k;
  ThetaResult th = theta_det(D.C, lam);
  if (!(th.lattice == IdealLattice::generated_by(G, {L}))) {
    R.reason = "Z[G] L differs from theta_lambda(Det C); the congruence is not asserted";
    return R;
  }
  QG LJ = project_qg(Q, L);
  LambdaMap lamJ = descend_lambda(lam, G, Q);
  ThetaResult thJ = theta_det(D.CJ, lamJ);
  R.theta_descends = thJ.u == project_qg(Q, th.u) &&
                     thJ.lattice == IdealLattice::generated_by(Q.quotient, {LJ});

  R.eta_X = special_element(D.C, lam, L, D.X).eta;
  CohomologyData H = cohomology(D.C);
  R.eta_X_integral = integral_vector(R.eta_X) && bidual(*H.H1_lattice, a).contains(flatten(R.eta_X));
  if (!R.eta_X_integral) {
    R.reason = "eta_X is not in the exterior bidual";
    return R;
  }
  AugmentationQuotient Qk = augmentation_quotient(G, D.subgroup_gens, k);
  JTensor lhs = norm_operator(R.eta_X, Q);
  R.norm_in_Q = true;
  for (const auto& v : lhs.values) R.norm_in_Q = R.norm_in_Q && Qk.in_Q(v);

  CohomologyData HJ = cohomology(D.CJ);
  const int sign = (a * k) % 2 ? -1 : 1;
  const auto out_sets = subsets(static_cast<int>(d), a);
  const auto in_sets = subsets(static_cast<int>(d), ap);
  for (int c = 0; c < std::max(1, choices); ++c) {
    MRSChoice mc;
    mc.choice = c;
    DescentBasis B = descent_basis(D, c);
    mc.basis_found = B.ok;
    if (!B.ok) {
      mc.reason = B.reason;
      R.choices.push_back(mc);
      continue;
    }
    std::vector<QG> etap = special_element(D.CJ, lamJ, LJ, B.Xp_effective).eta;
    if (c == 0) {
      R.eta_Xp = etap;
      R.eta_Xp_integral =
          integral_vector(etap) && bidual(*HJ.H1_lattice, ap).contains(flatten(etap));
    }
    if (!integral_vector(etap)) {
      mc.reason = "eta_X' is not integral";
      R.choices.push_back(mc);
      continue;
    }
    mc.lift_independent = true;
    for (int j = 0; j < k; ++j) mc.lift_independent = mc.lift_independent && bockstein(D, B, j).lift_independent;
    // (psi~_{a+1} ^ ... ^ psi~_{a'}) contracted against eta_X'.
    std::vector<std::vector<ZG>> per_coset;
    for (const auto& I : out_sets) {
      ZG acc(G);
      for (std::size_t t = 0; t < in_sets.size(); ++t) {
        const auto& K = in_sets[t];
        bool contains = true;
        for (int i : I) contains = contains && std::find(K.begin(), K.end(), i) != K.end();
        if (!contains || etap[t].is_zero()) continue;
        std::vector<int> S, order;
        for (int x : K)
          if (std::find(I.begin(), I.end(), x) == I.end()) S.push_back(x);
        order = S;
        order.insert(order.end(), I.begin(), I.end());
        std::vector<std::vector<ZG>> m(k, std::vector<ZG>(k, ZG(G)));
        for (int r = 0; r < k; ++r)
          for (int s = 0; s < k; ++s) m[r][s] = B.psi_adapted(a + r, S[s]);
        ZG term = ring_det(m, ZG::one(G)) * lift_element(G, Q, to_integral(etap[t]));
        acc += permutation_sign(order) > 0 ? term : -term;
      }
      per_coset.push_back(coset_components(G, Q, sign > 0 ? acc : -acc));
    }
    mc.lhs = lhs;
    mc.rhs = nu_embedding(G, Q, per_coset);
    mc.congruence = true;
    for (std::size_t i = 0; i < lhs.values.size(); ++i)
      mc.congruence = mc.congruence && Qk.congruent(lhs.values[i], mc.rhs.values[i]);
    R.choices.push_back(mc);
  }
  R.congruence = !R.choices.empty() && R.choices[0].basis_found && R.choices[0].congruence;
  R.choice_independent = true;
  for (const auto& mc : R.choices) {
    if (!mc.basis_found) continue;
    if (mc.congruence != R.congruence) R.choice_independent = false;
    for (std::size_t i = 0; i < mc.rhs.values.size() && R.choices[0].basis_found; ++i)
      if (!Qk.congruent(mc.rhs.values[i], R.choices[0].rhs.values[i])) R.choice_independent = false;
  }
  if (!R.choices.empty() && !R.choices[0].basis_found) R.reason = R.choices[0].reason;
  else if (!R.ok() && R.reason.empty()) R.reason = "the congruence fails";
  return R;
}

}  // namespace hse
