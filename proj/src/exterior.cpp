#include "hse/exterior.hpp"

#include <algorithm>
#include <stdexcept>

namespace hse {

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t subset_index(int n, const std::vector<int>& s) {
  // Count the subsets that precede s lexicographically.
  const int k = static_cast<int>(s.size());
  std::size_t idx = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < s[i]; ++v) idx += binomial(n - v - 1, k - i - 1);
    prev = s[i];
  }
  return idx;
}

std::vector<QG> wedge(const FiniteAbelianGroup& G, std::size_t d,
                      const std::vector<std::vector<QG>>& vs) {
  const int a = static_cast<int>(vs.size());
  std::vector<QG> out;
  for (const auto& I : subsets(static_cast<int>(d), a)) {
    std::vector<std::vector<QG>> m(a, std::vector<QG>(a));
    for (int k = 0; k < a; ++k)
      for (int l = 0; l < a; ++l) m[k][l] = vs[k][I[l]];
    out.push_back(ring_det(m, QG::one(G)));
  }
  return out;
}

QG wedge_functional(const FiniteAbelianGroup& G, const std::vector<std::vector<QG>>& vals,
                    const std::vector<QG>& w) {
  const int a = static_cast<int>(vals.size());
  const int d = a == 0 ? 0 : static_cast<int>(vals[0].size());
  if (a == 0) return w.at(0);
  QG out(G);
  auto Is = subsets(d, a);
  for (std::size_t i = 0; i < Is.size(); ++i) {
    if (w[i].is_zero()) continue;
    std::vector<std::vector<QG>> m(a, std::vector<QG>(a));
    for (int k = 0; k < a; ++k)
      for (int l = 0; l < a; ++l) m[k][l] = vals[k][Is[i][l]];
    out += w[i] * ring_det(m, QG::one(G));
  }
  return out;
}

PresentedModule exterior_power(const PresentedModule& M, int a) {
  const auto& G = M.G;
  const int m = static_cast<int>(M.generators);
  PresentedModule out;
  out.G = G;
  if (a < 0 || a > m) {
    out.generators = 0;
    out.relations = ZGMatrix(G, 0, 0);
    return out;
  }
  out.generators = binomial(m, a);
  std::vector<std::vector<ZG>> rows;
  if (a > 0) {
    for (std::size_t r = 0; r < M.relations.rows(); ++r)
      for (const auto& J : subsets(m, a - 1)) {
        std::vector<ZG> row(out.generators, ZG(G));
        bool nonzero = false;
        for (int i = 0; i < m; ++i) {
          if (std::find(J.begin(), J.end(), i) != J.end()) continue;
          const ZG& c = M.relations(r, i);
          if (c.is_zero()) continue;
          std::vector<int> S = J;
          S.push_back(i);
          std::sort(S.begin(), S.end());
          int before = 0;
          for (int j : J) before += j < i;
          std::size_t pos = subset_index(m, S);
          if (before % 2) row[pos] -= c;
          else row[pos] += c;
          nonzero = true;
        }
        if (nonzero) rows.push_back(row);
      }
  }
  out.relations = ZGMatrix(G, rows.size(), out.generators);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t j = 0; j < out.generators; ++j) out.relations(r, j) = rows[r][j];
  return out;
}

// --- biduals -----------------------------------------------------------------------

QG ExteriorDual::evaluate(std::size_t t, const std::vector<QG>& w) const {
  QG out(G);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!w[i].is_zero() && !D[t][i].is_zero()) out += w[i] * D[t][i];
  return out;
}

namespace {

QMatrix dual_vectors(const QMatrix& B) {
  auto inv = inverse(B * B.transpose());
  if (!inv) throw std::logic_error("exterior_dual: degenerate basis");
  return *inv * B;
}

}  // namespace

ExteriorDual exterior_dual(const GLattice& M, int a) {
  if (!M.embedding) throw std::invalid_argument("exterior_dual: lattice must be embedded");
  const auto& G = M.G;
  ExteriorDual X;
  X.G = G;
  X.d = M.ambient_rank;
  X.a = a;
  const std::size_t n = X.d * G.order();
  if (M.zrank() > 0) {
    ZLattice dual = ZLattice::from_rows(dual_vectors(*M.embedding), n);
    for (const auto& F : zg_generators(G, dual)) {
      std::vector<QG> vals;
      for (const auto& block : unflatten(G, F)) vals.push_back(block.involution());
      X.functionals.push_back(vals);
    }
  }
  X.tuples = subsets(static_cast<int>(X.functionals.size()), a);
  auto Is = subsets(static_cast<int>(X.d), a);
  for (const auto& T : X.tuples) {
    std::vector<QG> row;
    for (const auto& I : Is) {
      std::vector<std::vector<QG>> m(a, std::vector<QG>(a));
      for (int k = 0; k < a; ++k)
        for (int l = 0; l < a; ++l) m[k][l] = X.functionals[T[k]][I[l]];
      row.push_back(ring_det(m, QG::one(G)));
    }
    X.D.push_back(row);
  }
  return X;
}

ZLattice bidual(const GLattice& M, int a) {
  const auto& G = M.G;
  const std::size_t d = M.ambient_rank;
  const std::size_t width = binomial(static_cast<int>(d), a) * G.order();
  if (a < 0 || static_cast<std::size_t>(a) > d) return ZLattice(width);
  // Q-span of the a-th exterior power of Q M inside Q[G]^C(d, a).
  std::vector<std::vector<QG>> gens;
  if (M.zrank() > 0)
    for (const auto& v : zg_generators(G, M.lattice())) gens.push_back(unflatten(G, v));
  QMatrix W(0, width);
  for (const auto& S : subsets(static_cast<int>(gens.size()), a)) {
    std::vector<std::vector<QG>> vs;
    for (int s : S) vs.push_back(gens[s]);
    QVec w = flatten(wedge(G, d, vs));
    for (int g = 0; g < G.order(); ++g) W.append_row(shift_flat(G, w, g));
  }
  if (W.rows() == 0) return ZLattice(width);
  RREF<mpq_class> e = rref(W);
  const std::size_t k = e.rank();
  if (k == 0) return ZLattice(width);
  QMatrix BV = e.R.block(0, 0, k, width);

  ExteriorDual X = exterior_dual(M, a);
  const std::size_t cols = X.tuples.size() * G.order();
  QMatrix Fm(k, cols);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<QG> w = unflatten(G, BV.row(i));
    for (std::size_t t = 0; t < X.tuples.size(); ++t) {
      QG val = X.evaluate(t, w);
      for (int g = 0; g < G.order(); ++g) Fm(i, t * G.order() + g) = val[g];
    }
  }
  // c * BV lies in the bidual iff c * Fm is integral, i.e. c is in the dual
  // of the lattice spanned by the columns of Fm.
  ZLattice Lambda = ZLattice::from_rows(Fm.transpose(), k);
  if (Lambda.rank() != k) throw std::logic_error("bidual: functionals do not separate");
  auto Binv = inverse(Lambda.basis());
  return ZLattice::from_rows(Binv->transpose() * BV, width);
}

IdealLattice functional_ideal(const GLattice& M, int a, const std::vector<QG>& w) {
  ExteriorDual X = exterior_dual(M, a);
  std::vector<QG> vals;
  for (std::size_t t = 0; t < X.tuples.size(); ++t) vals.push_back(X.evaluate(t, w));
  return IdealLattice::generated_by(M.G, vals);
}

}  // namespace hse
