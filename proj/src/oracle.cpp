#include "hse/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hse::oracle {

namespace {

// --- an independent finite abelian group and its rational group ring ----------

struct Grp {
  std::vector<int> n;
  std::vector<int> radix;
  int order = 1;

  explicit Grp(const std::vector<int>& factors) : n(factors), radix(factors.size(), 1) {
    for (std::size_t i = n.size(); i-- > 0;) {
      radix[i] = order;
      order *= n[i];
    }
  }
  int digit(int g, std::size_t i) const { return (g / radix[i]) % n[i]; }
  int mul(int g, int h) const {
    int p = 0;
    for (std::size_t i = 0; i < n.size(); ++i) p += ((digit(g, i) + digit(h, i)) % n[i]) * radix[i];
    return p;
  }
  int inv(int g) const {
    int p = 0;
    for (std::size_t i = 0; i < n.size(); ++i) p += ((n[i] - digit(g, i)) % n[i]) * radix[i];
    return p;
  }
  int exponent() const {
    int e = 1;
    for (int f : n) e = std::lcm(e, f);
    return e;
  }
};

using Elt = std::vector<mpq_class>;  // coefficients on group elements

Elt elt_zero(const Grp& G) { return Elt(G.order, 0); }

Elt elt_mul(const Grp& G, const Elt& x, const Elt& y) {
  Elt z = elt_zero(G);
  for (int g = 0; g < G.order; ++g) {
    if (x[g] == 0) continue;
    for (int h = 0; h < G.order; ++h)
      if (y[h] != 0) z[G.mul(g, h)] += x[g] * y[h];
  }
  return z;
}

void elt_add(Elt& x, const Elt& y, int sign = 1) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += sign > 0 ? y[i] : -y[i];
}

Elt shift(const Grp& G, const Elt& x, int h) {
  Elt z = elt_zero(G);
  for (int g = 0; g < G.order; ++g) z[G.mul(h, g)] = x[g];
  return z;
}

// Laplace expansion along the first row.
Elt elt_det(const Grp& G, const std::vector<std::vector<Elt>>& m) {
  const std::size_t k = m.size();
  if (k == 0) {
    Elt one = elt_zero(G);
    one[0] = 1;
    return one;
  }
  Elt acc = elt_zero(G);
  for (std::size_t j = 0; j < k; ++j) {
    bool zero = std::all_of(m[0][j].begin(), m[0][j].end(), [](const mpq_class& c) { return c == 0; });
    if (zero) continue;
    std::vector<std::vector<Elt>> minor;
    for (std::size_t i = 1; i < k; ++i) {
      std::vector<Elt> row;
      for (std::size_t l = 0; l < k; ++l)
        if (l != j) row.push_back(m[i][l]);
      minor.push_back(row);
    }
    elt_add(acc, elt_mul(G, m[0][j], elt_det(G, minor)), j % 2 ? -1 : 1);
  }
  return acc;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> s(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      f(s);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      s[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// --- integer Hermite form and rational solving ---------------------------------

using ZRow = std::vector<mpz_class>;

// Row-style HNF with positive pivots and reduced entries above each pivot.
std::vector<ZRow> hnf(std::vector<ZRow> A, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < A.size(); ++c) {
    for (;;) {
      std::size_t piv = A.size();
      for (std::size_t i = r; i < A.size(); ++i)
        if (A[i][c] != 0 && (piv == A.size() || abs(A[i][c]) < abs(A[piv][c]))) piv = i;
      if (piv == A.size()) break;
      std::swap(A[r], A[piv]);
      bool done = true;
      for (std::size_t i = r + 1; i < A.size(); ++i) {
        if (A[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A[i][c].get_mpz_t(), A[r][c].get_mpz_t());
        for (std::size_t l = c; l < n; ++l) A[i][l] -= q * A[r][l];
        if (A[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < A.size() && A[r][c] != 0) {
      if (A[r][c] < 0)
        for (auto& v : A[r]) v = -v;
      for (std::size_t i = 0; i < r; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), A[i][c].get_mpz_t(), A[r][c].get_mpz_t());
        for (std::size_t l = c; l < n; ++l) A[i][l] -= q * A[r][l];
      }
      ++r;
    }
  }
  A.resize(r);
  return A;
}

// Some y with sum_j y_j rows[j] = b, by Gauss-Jordan on the transpose.
std::optional<std::vector<mpq_class>> solve_rows(const std::vector<std::vector<mpq_class>>& rows,
                                                 const std::vector<mpq_class>& b) {
  const std::size_t m = rows.size(), n = b.size();
  // Augmented system: n equations in m unknowns.
  std::vector<std::vector<mpq_class>> E(n, std::vector<mpq_class>(m + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) E[i][j] = rows[j][i];
    E[i][m] = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t p = r;
    while (p < n && E[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(E[r], E[p]);
    const mpq_class inv = 1 / E[r][c];
    for (auto& v : E[r]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || E[i][c] == 0) continue;
      const mpq_class f = E[i][c];
      for (std::size_t l = c; l <= m; ++l) E[i][l] -= f * E[r][l];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (E[i][m] != 0) return std::nullopt;
  std::vector<mpq_class> y(m, 0);
  for (std::size_t i = 0; i < r; ++i) y[pivots[i]] = E[i][m];
  return y;
}

mpz_class lcm_den(const std::vector<mpq_class>& v) {
  mpz_class d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

}  // namespace

// --- OracleLattice ---------------------------------------------------------------

OracleLattice OracleLattice::from_rows(std::size_t n, const std::vector<std::vector<mpq_class>>& rows) {
  OracleLattice L;
  L.n = n;
  mpz_class den = 1;
  for (const auto& r : rows) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), lcm_den(r).get_mpz_t());
  std::vector<ZRow> Z;
  mpz_class content = 0;
  for (const auto& r : rows) {
    ZRow z(n);
    for (std::size_t i = 0; i < n; ++i) {
      mpq_class v = r[i] * den;
      z[i] = v.get_num();
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[i].get_mpz_t());
    }
    Z.push_back(z);
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), content.get_mpz_t());
  if (content == 0) g = den;
  for (auto& z : Z)
    for (auto& v : z) v /= g;
  L.den = den / g;
  L.rows = hnf(Z, n);
  if (L.rows.empty()) L.den = 1;
  return L;
}

OracleLattice OracleLattice::from_main(const ZLattice& M) {
  std::vector<std::vector<mpq_class>> rows;
  const auto& B = M.basis_numerators();
  for (std::size_t i = 0; i < B.rows(); ++i) {
    std::vector<mpq_class> r(M.ambient_dim());
    for (std::size_t j = 0; j < r.size(); ++j) {
      r[j] = mpq_class(B(i, j), M.denominator());
      r[j].canonicalize();
    }
    rows.push_back(r);
  }
  return from_rows(M.ambient_dim(), rows);
}

std::optional<mpz_class> OracleLattice::exponent_over(const OracleLattice& sub) const {
  std::vector<std::vector<mpq_class>> S;
  for (const auto& r : sub.rows) {
    std::vector<mpq_class> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = mpq_class(r[i], sub.den);
    S.push_back(q);
  }
  mpz_class e = 1;
  for (const auto& r : rows) {
    std::vector<mpq_class> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = mpq_class(r[i], den);
      v[i].canonicalize();
    }
    auto y = solve_rows(S, v);
    if (!y) return std::nullopt;
    // The sub basis is independent, so y is unique.
    mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), lcm_den(*y).get_mpz_t());
  }
  return e;
}

// --- instance generation -----------------------------------------------------------

Instance random_instance(const InstanceSpec& spec) {
  if (spec.bound <= 0 || spec.d == 0) throw std::invalid_argument("random_instance: bounds must be positive");
  FiniteAbelianGroup G(spec.group);
  std::mt19937 rng(spec.seed);
  Instance I;
  I.G = G;
  I.shape = spec.shape;
  const int n = G.order();
  auto nonvanishing = [&]() {
    for (;;) {
      ZG x = random_zg(G, rng, spec.bound);
      bool ok = true;
      for (const auto& c : char_coords(x)) ok = ok && !c.is_zero();
      if (ok) return x;
    }
  };
  if (spec.shape == Shape::three_term) {
    const std::size_t s2 = spec.s1 + spec.s3;
    ZGMatrix U = random_unimodular_zg(G, s2, rng);
    ZGMatrix Uinv = *zg_inverse(U);
    ZGMatrix V = random_unimodular_zg(G, spec.s1, rng);
    ZGMatrix W = random_unimodular_zg(G, spec.s3, rng);
    ZGMatrix left(G, s2, spec.s1), right(G, spec.s3, s2);
    for (std::size_t i = 0; i < spec.s1; ++i)
      for (std::size_t j = 0; j < spec.s1; ++j) left(spec.s3 + i, j) = random_zg(G, rng, spec.bound);
    for (std::size_t i = 0; i < spec.s3; ++i) right(i, i) = nonvanishing();
    I.three = ThreeTermComplex::make(U * left * V, W * right * Uinv);
    return I;
  }
  // Rank vector: given, or random and Galois-stable with minimum >= a.
  std::vector<int> r = spec.rank_vector;
  const int e = G.exponent();
  auto orbit_rep = [&](int chi) {
    int rep = chi;
    for (int k = 1; k <= e; ++k)
      if (std::gcd(k, e) == 1) rep = std::min(rep, G.char_pow(chi, k));
    return rep;
  };
  if (r.empty()) {
    r.assign(n, 0);
    for (int chi = 0; chi < n; ++chi) {
      int rep = orbit_rep(chi);
      r[chi] = rep == chi ? static_cast<int>(spec.a + rng() % (spec.d - spec.a + 1)) : r[rep];
    }
    for (int chi = 0; chi < n; ++chi) r[chi] = r[orbit_rep(chi)];
  }
  if (static_cast<int>(r.size()) != n) throw std::invalid_argument("random_instance: rank vector length");
  for (int chi = 0; chi < n; ++chi) {
    if (r[chi] < 0 || r[chi] > static_cast<int>(spec.d))
      throw std::invalid_argument("random_instance: rank out of range");
    for (int k = 1; k <= e; ++k)
      if (std::gcd(k, e) == 1 && r[G.char_pow(chi, k)] != r[chi])
        throw std::invalid_argument("random_instance: rank vector is not Galois-stable");
  }
  const int rmin = *std::min_element(r.begin(), r.end());
  if (spec.x_kind == XKind::separable && static_cast<int>(spec.a) > rmin)
    throw std::invalid_argument("random_instance: separable X needs a free summand of rank a");
  ZGMatrix D(G, spec.d, spec.d);
  for (std::size_t i = 0; i < spec.d; ++i) {
    // Vanishing exactly at the characters with r_chi > i.
    std::vector<Cyc> coords(n);
    bool all = true, none = true;
    for (int chi = 0; chi < n; ++chi) {
      const bool zero = r[chi] > static_cast<int>(i);
      coords[chi] = zero ? Cyc(0) : Cyc(n);
      all = all && zero;
      none = none && !zero;
    }
    if (all) continue;
    if (none) {
      D(i, i) = nonvanishing();
      continue;
    }
    ZG x = to_integral(*rational_from_char_coords(G, coords));
    mpz_class c = 0;
    for (int g = 0; g < n; ++g) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x[g].get_mpz_t());
    for (int g = 0; g < n; ++g) x[g] /= c;
    D(i, i) = rng() % 2 ? x : x * nonvanishing();
  }
  ZGMatrix U = random_unimodular_zg(G, spec.d, rng);
  ZGMatrix V = random_unimodular_zg(G, spec.d, rng);
  I.strict = StrictComplex{U * D * V};
  I.rank_vector = r;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < spec.a; ++i) idx.push_back(i);
  if (spec.x_kind == XKind::separable) {
    I.X = U.select_columns(idx);
  } else if (spec.x_kind == XKind::arbitrary) {
    ZGMatrix X(G, spec.d, spec.a);
    for (std::size_t i = 0; i < spec.d; ++i)
      for (std::size_t j = 0; j < spec.a; ++j) X(i, j) = random_zg(G, rng, spec.bound);
    I.X = X;
  }
  I.lambda = random_lambda(G, character_spaces(*I.strict), rng());
  return I;
}

// --- Fitting ideals --------------------------------------------------------------------

OracleLattice brute_force_fitting(const PresentedModule& M, int a, unsigned seed) {
  const std::size_t m = M.generators;
  if (m > 5) throw std::invalid_argument("brute_force_fitting: more than 5 generators");
  Grp G(M.G.factors());
  const std::size_t n = G.order;
  std::mt19937 rng(seed);
  auto dist = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  // Re-presentation on m + 1 generators: y = sum c_i x_i.
  const std::size_t mm = m + 1;
  std::vector<std::vector<Elt>> R;
  for (std::size_t i = 0; i < M.relations.rows(); ++i) {
    std::vector<Elt> row(mm, elt_zero(G));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t g = 0; g < n; ++g) row[j][g] = M.relations(i, j)[g];
    R.push_back(row);
  }
  std::vector<Elt> extra(mm, elt_zero(G));
  for (std::size_t j = 0; j < m; ++j) extra[j][0] = dist(-2, 2);
  extra[m][0] = -1;
  R.push_back(extra);
  for (int t = 0; t < 3 * static_cast<int>(R.size()); ++t) {
    std::size_t i = rng() % R.size(), l = rng() % R.size();
    if (i == l) continue;
    const int c = dist(-2, 2);
    for (std::size_t j = 0; j < mm; ++j) {
      Elt s = R[l][j];
      for (auto& v : s) v *= c;
      elt_add(R[i][j], s);
    }
  }
  if (R.size() >= 2) {
    std::vector<Elt> red = R[0];
    for (std::size_t j = 0; j < mm; ++j) elt_add(red[j], R[1][j]);
    R.push_back(red);
  }
  const int k = static_cast<int>(mm) - a;
  const std::size_t N = n;
  if (k <= 0) {
    std::vector<mpq_class> one(N, 0);
    one[0] = 1;
    return OracleLattice::from_rows(N, {one});
  }
  if (static_cast<std::size_t>(k) > R.size()) return OracleLattice::from_rows(N, {});
  if (choose(R.size(), k) * choose(mm, k) > 20000)
    throw std::invalid_argument("brute_force_fitting: too many minors");
  std::vector<std::vector<mpq_class>> gens;
  for_each_subset(R.size(), k, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(mm, k, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<Elt>> sub;
      for (auto i : rows) {
        std::vector<Elt> row;
        for (auto j : cols) row.push_back(R[i][j]);
        sub.push_back(row);
      }
      Elt mu = elt_det(G, sub);
      if (std::all_of(mu.begin(), mu.end(), [](const mpq_class& c) { return c == 0; })) return;
      for (int h = 0; h < G.order; ++h) gens.push_back(shift(G, mu, h));
    });
  });
  return OracleLattice::from_rows(N, gens);
}

// --- exterior biduals ---------------------------------------------------------------

namespace {

struct WedgeData {
  explicit WedgeData(const Grp& g) : G(g) {}
  Grp G;
  std::size_t d = 0, zrank = 0;
  std::vector<std::vector<Elt>> basis;  // Z-basis of M, as vectors in Q[G]^d
  std::vector<std::vector<std::size_t>> out_sets;  // a-subsets of {0..d-1}
  std::vector<std::vector<std::size_t>> gen_sets;  // a-subsets of the Z-basis
  std::vector<std::vector<mpq_class>> gens;        // wedges, flattened
  std::vector<std::pair<std::size_t, int>> gen_of;  // (subset, translate) per wedge
};

WedgeData wedge_data(const GLattice& M, int a) {
  if (!M.embedding) throw std::invalid_argument("oracle: lattice must be embedded");
  WedgeData W(Grp(M.G.factors()));
  const Grp& G = W.G;
  W.d = M.ambient_rank;
  W.zrank = M.embedding->rows();
  for (std::size_t k = 0; k < W.zrank; ++k) {
    std::vector<Elt> v(W.d, elt_zero(G));
    for (std::size_t i = 0; i < W.d; ++i)
      for (int g = 0; g < G.order; ++g) v[i][g] = (*M.embedding)(k, i * G.order + g);
    W.basis.push_back(v);
  }
  for_each_subset(W.d, a, [&](const std::vector<std::size_t>& s) { W.out_sets.push_back(s); });
  std::vector<std::vector<std::size_t>> sets;
  for_each_subset(W.zrank, a, [&](const std::vector<std::size_t>& s) { sets.push_back(s); });
  for (const auto& L : sets) {
    W.gen_sets.push_back(L);
    std::vector<mpq_class> flat;
    for (const auto& I : W.out_sets) {
      std::vector<std::vector<Elt>> m(a, std::vector<Elt>(a));
      for (int r = 0; r < a; ++r)
        for (int c = 0; c < a; ++c) m[r][c] = W.basis[L[c]][I[r]];
      Elt v = elt_det(G, m);
      flat.insert(flat.end(), v.begin(), v.end());
    }
    // G-translates are only needed for a = 0; for a > 0 they are Z-combinations.
    for (int h = 0; h < (a == 0 ? G.order : 1); ++h) {
      std::vector<mpq_class> moved;
      for (std::size_t I = 0; I < W.out_sets.size(); ++I) {
        Elt x(flat.begin() + I * G.order, flat.begin() + (I + 1) * G.order);
        Elt y = shift(G, x, h);
        moved.insert(moved.end(), y.begin(), y.end());
      }
      W.gens.push_back(moved);
      W.gen_of.emplace_back(W.gen_sets.size() - 1, h);
    }
  }
  return W;
}

}  // namespace

OracleLattice wedge_lattice(const GLattice& M, int a) {
  WedgeData W = wedge_data(M, a);
  return OracleLattice::from_rows(W.out_sets.size() * W.G.order, W.gens);
}

OracleLattice brute_force_bidual(const GLattice& M, int a, const mpz_class& D, std::size_t max_points) {
  if (a < 0 || a > 2) throw std::invalid_argument("brute_force_bidual: a must be at most 2");
  WedgeData W = wedge_data(M, a);
  const Grp& G = W.G;
  const std::size_t n = G.order;
  if (W.zrank > 6) throw std::invalid_argument("brute_force_bidual: Z-rank above 6");
  const std::size_t width = W.out_sets.size() * n;
  // phi_k(v)_h = (coordinate k of h^-1 v in the Z-basis), on basis elements.
  std::vector<std::vector<mpq_class>> flat_basis;
  for (const auto& v : W.basis) {
    std::vector<mpq_class> f;
    for (const auto& x : v) f.insert(f.end(), x.begin(), x.end());
    flat_basis.push_back(f);
  }
  // phi[k][l] = phi_k(m_l) in Q[G].
  std::vector<std::vector<Elt>> phi(W.zrank, std::vector<Elt>(W.zrank, elt_zero(G)));
  for (std::size_t l = 0; l < W.zrank; ++l)
    for (int h = 0; h < G.order; ++h) {
      std::vector<mpq_class> moved;
      for (const auto& x : W.basis[l]) {
        Elt y = shift(G, x, G.inv(h));
        moved.insert(moved.end(), y.begin(), y.end());
      }
      auto c = solve_rows(flat_basis, moved);
      if (!c) throw std::invalid_argument("brute_force_bidual: lattice is not G-stable");
      for (std::size_t k = 0; k < W.zrank; ++k) phi[k][l][h] = (*c)[k];
    }
  // Phi_T(gen_L) = det(phi_{T_i}(m_{L_j})).
  const auto& tuples = W.gen_sets;
  std::vector<std::vector<Elt>> Phi_gen(tuples.size());
  for (std::size_t t = 0; t < tuples.size(); ++t)
    for (const auto& [L, h] : W.gen_of) {
      std::vector<std::vector<Elt>> m(a, std::vector<Elt>(a));
      for (int r = 0; r < a; ++r)
        for (int c = 0; c < a; ++c) m[r][c] = phi[tuples[t][r]][W.gen_sets[L][c]];
      Phi_gen[t].push_back(shift(G, elt_det(G, m), h));
    }
  // Z-basis b_k of W and the values Phi_T(b_k).
  OracleLattice WL = OracleLattice::from_rows(width, W.gens);
  const std::size_t r = WL.rank();
  std::vector<std::vector<mpq_class>> b;
  for (const auto& row : WL.rows) {
    std::vector<mpq_class> q(width);
    for (std::size_t i = 0; i < width; ++i) {
      q[i] = mpq_class(row[i], WL.den);
      q[i].canonicalize();
    }
    b.push_back(q);
  }
  std::vector<std::vector<Elt>> Phi_b(tuples.size(), std::vector<Elt>(r, elt_zero(G)));
  for (std::size_t k = 0; k < r; ++k) {
    auto y = *solve_rows(W.gens, b[k]);
    for (std::size_t t = 0; t < tuples.size(); ++t)
      for (std::size_t j = 0; j < W.gens.size(); ++j)
        for (std::size_t h = 0; h < n; ++h) Phi_b[t][k][h] += y[j] * Phi_gen[t][j][h];
  }
  // Condition: sum_k c_k Phi_T(b_k) in D Z[G], written mod q D over integers.
  mpz_class q = 1;
  for (const auto& row : Phi_b)
    for (const auto& e : row) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), lcm_den(e).get_mpz_t());
  const mpz_class modz = q * D;
  if (!modz.fits_slong_p()) throw std::invalid_argument("brute_force_bidual: modulus too large");
  const long mod = modz.get_si();
  const long Dl = D.get_si();
  double points = 1;
  for (std::size_t k = 0; k < r; ++k) points *= static_cast<double>(Dl);
  if (points > static_cast<double>(max_points)) throw std::invalid_argument("brute_force_bidual: box too large");
  const std::size_t conds = tuples.size() * n;
  std::vector<std::vector<long>> col(r, std::vector<long>(conds));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t t = 0; t < tuples.size(); ++t)
      for (std::size_t h = 0; h < n; ++h) {
        mpz_class v = mpz_class(Phi_b[t][k][h] * q) % modz;
        col[k][t * n + h] = (v.get_si() + mod) % mod;
      }
  // Odometer over c in [0, D)^r; passing c form a subgroup of (Z/D)^r, kept
  // as a small integer basis with membership by reduction.
  std::vector<std::vector<long>> H;  // echelon rows in c-space, with D e_k implicit
  auto reduce = [&](std::vector<long> v) {
    for (auto& x : v) x = ((x % Dl) + Dl) % Dl;
    for (const auto& h : H) {
      std::size_t p = 0;
      while (h[p] == 0) ++p;
      if (v[p] % h[p] != 0) continue;
      const long f = v[p] / h[p];
      for (std::size_t i = 0; i < r; ++i) v[i] = (((v[i] - f * h[i]) % Dl) + Dl) % Dl;
    }
    return v;
  };
  auto insert = [&](const std::vector<long>& v) {
    // Re-echelonize over Z with the implicit D e_k rows.
    std::vector<ZRow> rows;
    for (const auto& h : H) rows.push_back(ZRow(h.begin(), h.end()));
    rows.push_back(ZRow(v.begin(), v.end()));
    for (std::size_t k = 0; k < r; ++k) {
      ZRow e(r, 0);
      e[k] = Dl;
      rows.push_back(e);
    }
    auto E = hnf(rows, r);
    H.clear();
    for (const auto& e : E) {
      std::vector<long> h;
      for (const auto& x : e) h.push_back(x.get_si());
      H.push_back(h);
    }
  };
  auto member = [&](const std::vector<long>& v) {
    auto w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
  };
  std::vector<long> c(r, 0), S(conds, 0);
  for (;;) {
    if (std::all_of(S.begin(), S.end(), [](long x) { return x == 0; }) && !member(c)) insert(c);
    std::size_t k = 0;
    while (k < r) {
      ++c[k];
      for (std::size_t i = 0; i < conds; ++i) S[i] = (S[i] + col[k][i]) % mod;
      if (c[k] < Dl) break;
      c[k] = 0;
      for (std::size_t i = 0; i < conds; ++i) S[i] = (((S[i] - Dl * col[k][i]) % mod) + mod) % mod;
      ++k;
    }
    if (k == r) break;
  }
  std::vector<std::vector<mpq_class>> out = b;
  for (const auto& h : H) {
    std::vector<mpq_class> v(width, 0);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < width; ++i) v[i] += mpq_class(h[k], D) * b[k][i];
    out.push_back(v);
  }
  return OracleLattice::from_rows(width, out);
}

// --- pairings and integrality ---------------------------------------------------------

bool pairing_oracle(const std::vector<mpz_class>& left, const std::vector<mpz_class>& right,
                    const std::vector<std::vector<mpq_class>>& values, std::size_t max_elements) {
  auto order = [](const std::vector<mpz_class>& v) {
    mpz_class o = 1;
    for (const auto& x : v) o *= x;
    return o;
  };
  const mpz_class ol = order(left), orr = order(right);
  if (ol > max_elements || orr > max_elements) throw std::invalid_argument("pairing_oracle: group too large");
  if (ol != orr) return false;
  if (values.size() != left.size()) return false;
  for (const auto& row : values)
    if (row.size() != right.size()) return false;
  // Well defined on both sides.
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (mpq_class(values[i][j] * left[i]).get_den() != 1) return false;
      if (mpq_class(values[i][j] * right[j]).get_den() != 1) return false;
    }
  // A nonzero element pairing trivially with every generator of the other side.
  auto radical_zero = [&](const std::vector<mpz_class>& A, bool transpose) {
    const std::size_t k = A.size();
    std::vector<long> x(k, 0);
    const std::size_t other = transpose ? left.size() : right.size();
    for (;;) {
      std::size_t i = 0;
      while (i < k && ++x[i] == A[i].get_si()) x[i++] = 0;
      if (i == k) return true;  // wrapped around: all nonzero elements checked
      bool trivial = true;
      for (std::size_t j = 0; j < other && trivial; ++j) {
        mpq_class s = 0;
        for (std::size_t l = 0; l < k; ++l) s += x[l] * (transpose ? values[j][l] : values[l][j]);
        trivial = s.get_den() == 1;
      }
      if (trivial) return false;
    }
  };
  return radical_zero(left, false) && radical_zero(right, true);
}

bool integrality_oracle(const std::vector<int>& group, const std::vector<Cyc>& coords) {
  Grp G(group);
  if (static_cast<int>(coords.size()) != G.order) throw std::invalid_argument("integrality_oracle: size");
  const int e = G.exponent();
  for (int g = 0; g < G.order; ++g) {
    // x_g = |G|^-1 sum_chi chi(g^-1) x_chi.
    Cyc s(0);
    for (int chi = 0; chi < G.order; ++chi) {
      long k = 0;
      for (std::size_t i = 0; i < G.n.size(); ++i)
        k += static_cast<long>(G.digit(chi, i)) * G.digit(G.inv(g), i) * (e / G.n[i]);
      if (e % coords[chi].conductor() != 0) return false;
      s += Cyc::zeta(e, k % e) * coords[chi].promoted(e);
    }
    s = s * Cyc(mpq_class(1, G.order));
    if (!s.is_rational() || s.rational().get_den() != 1) return false;
  }
  return true;
}

}  // namespace hse::oracle
