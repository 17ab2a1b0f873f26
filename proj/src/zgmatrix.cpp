#include "hse/zgmatrix.hpp"

#include <stdexcept>

namespace hse {

ZGMatrix::ZGMatrix(const FiniteAbelianGroup& G, std::size_t r, std::size_t c)
    : G_(G), r_(r), c_(c), a_(r * c, ZG(G)) {}

ZGMatrix ZGMatrix::identity(const FiniteAbelianGroup& G, std::size_t n) {
  ZGMatrix m(G, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ZG::one(G);
  return m;
}

ZGMatrix ZGMatrix::from_columns(const FiniteAbelianGroup& G, std::size_t rows,
                                const std::vector<std::vector<ZG>>& cols) {
  ZGMatrix m(G, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("ZGMatrix: column height");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

std::vector<ZG> ZGMatrix::column(std::size_t j) const {
  std::vector<ZG> v;
  for (std::size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
  return v;
}

std::vector<ZG> ZGMatrix::row(std::size_t i) const {
  return std::vector<ZG>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

ZGMatrix ZGMatrix::operator*(const ZGMatrix& o) const {
  if (c_ != o.r_) throw std::invalid_argument("ZGMatrix product: shape");
  ZGMatrix p(G_, r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const ZG& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j)
        if (!o(k, j).is_zero()) p(i, j) += x * o(k, j);
    }
  return p;
}

ZGMatrix ZGMatrix::operator+(const ZGMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("ZGMatrix sum: shape");
  ZGMatrix s = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) s.a_[k] += o.a_[k];
  return s;
}

ZGMatrix ZGMatrix::transpose() const {
  ZGMatrix t(G_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ZGMatrix ZGMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  ZGMatrix m(G_, r_, idx.size());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

ZGMatrix ZGMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  ZGMatrix m(G_, idx.size(), c_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

std::vector<ZG> ZGMatrix::apply(const std::vector<ZG>& v) const {
  if (v.size() != c_) throw std::invalid_argument("ZGMatrix apply: shape");
  std::vector<ZG> out(r_, ZG(G_));
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

bool ZGMatrix::operator==(const ZGMatrix& o) const {
  return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

bool ZGMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

IntMatrix ZGMatrix::restriction() const {
  const int n = G_.order();
  IntMatrix R = IntMatrix::zeros(c_ * n, r_ * n);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) {
      const ZG& x = (*this)(i, j);
      for (int g = 0; g < n; ++g) {
        if (x[g] == 0) continue;
        for (int h = 0; h < n; ++h) R(j * n + h, i * n + G_.mul(g, h)) += x[g];
      }
    }
  return R;
}

KMatrix ZGMatrix::at_character(int chi) const {
  const int e = G_.exponent();
  KMatrix M(r_, c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) {
      std::vector<mpq_class> acc(e, mpq_class(0));
      const ZG& x = (*this)(i, j);
      for (int g = 0; g < G_.order(); ++g)
        if (x[g] != 0) acc[G_.char_exponent(chi, g)] += x[g];
      M(i, j) = Cyc::from_coeffs(e, std::move(acc));
    }
  return M;
}

IntVec flatten(const std::vector<ZG>& v) {
  IntVec out;
  for (const auto& x : v) out.insert(out.end(), x.coeffs().begin(), x.coeffs().end());
  return out;
}

QVec flatten(const std::vector<QG>& v) {
  QVec out;
  for (const auto& x : v) out.insert(out.end(), x.coeffs().begin(), x.coeffs().end());
  return out;
}

std::vector<ZG> unflatten_int(const FiniteAbelianGroup& G, const IntVec& v) {
  const std::size_t n = G.order();
  if (v.size() % n) throw std::invalid_argument("unflatten: length");
  std::vector<ZG> out;
  for (std::size_t i = 0; i < v.size() / n; ++i)
    out.emplace_back(G, IntVec(v.begin() + i * n, v.begin() + (i + 1) * n));
  return out;
}

std::vector<QG> unflatten(const FiniteAbelianGroup& G, const QVec& v) {
  const std::size_t n = G.order();
  if (v.size() % n) throw std::invalid_argument("unflatten: length");
  std::vector<QG> out;
  for (std::size_t i = 0; i < v.size() / n; ++i)
    out.emplace_back(G, QVec(v.begin() + i * n, v.begin() + (i + 1) * n));
  return out;
}

template <class V>
static V shift_impl(const FiniteAbelianGroup& G, const V& v, int g) {
  const std::size_t n = G.order();
  V out(v.size());
  for (std::size_t i = 0; i < v.size() / n; ++i)
    for (std::size_t h = 0; h < n; ++h) out[i * n + G.mul(g, h)] = v[i * n + h];
  return out;
}

QVec shift_flat(const FiniteAbelianGroup& G, const QVec& v, int g) { return shift_impl(G, v, g); }
IntVec shift_flat(const FiniteAbelianGroup& G, const IntVec& v, int g) { return shift_impl(G, v, g); }

ZLattice zg_span(const FiniteAbelianGroup& G, std::size_t n_flat, const std::vector<QVec>& vs) {
  QMatrix rows(0, n_flat);
  for (const auto& v : vs)
    for (int g = 0; g < G.order(); ++g) rows.append_row(shift_flat(G, v, g));
  return ZLattice::from_rows(rows, n_flat);
}

ZLattice zg_span(const FiniteAbelianGroup& G, const ZLattice& L) {
  std::vector<QVec> vs;
  for (std::size_t i = 0; i < L.rank(); ++i) vs.push_back(L.basis_row(i));
  return zg_span(G, L.ambient_dim(), vs);
}

bool is_g_stable(const FiniteAbelianGroup& G, const ZLattice& L) {
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (int g = 1; g < G.order(); ++g)
      if (!L.contains(shift_flat(G, L.basis_row(i), g))) return false;
  return true;
}

std::vector<QVec> zg_generators(const FiniteAbelianGroup& G, const ZLattice& L) {
  std::vector<QVec> gens;
  ZLattice S(L.ambient_dim());
  for (std::size_t i = 0; i < L.rank() && S != L; ++i) {
    QVec v = L.basis_row(i);
    if (S.contains(v)) continue;
    gens.push_back(v);
    S = S + zg_span(G, L.ambient_dim(), {v});
  }
  return gens;
}

std::vector<KVec> vector_char_coords(const FiniteAbelianGroup& G, const QVec& v) {
  auto parts = unflatten(G, v);
  std::vector<KVec> out(G.order(), KVec(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto c = char_coords(parts[i]);
    for (int chi = 0; chi < G.order(); ++chi) out[chi][i] = c[chi];
  }
  return out;
}

}  // namespace hse
