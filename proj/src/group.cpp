#include "hse/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hse/intlinalg.hpp"

namespace hse {

struct FiniteAbelianGroup::Impl {
  std::vector<int> n;
  int order = 1;
  int exponent = 1;
  std::vector<int> radix;     // radix[i] = prod_{j>i} n_j
  std::vector<int> mul;       // order x order
  std::vector<int> inv;
};

FiniteAbelianGroup::FiniteAbelianGroup() : FiniteAbelianGroup(std::vector<int>{}) {}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 2) throw std::invalid_argument("group: invariant factors must be >= 2");
    if (i > 0 && f[i] % f[i - 1] != 0)
      throw std::invalid_argument("group: invariant factors must form a divisibility chain");
  }
  auto impl = std::make_shared<Impl>();
  impl->n = f;
  impl->radix.assign(f.size(), 1);
  for (std::size_t i = f.size(); i-- > 0;) {
    impl->radix[i] = impl->order;
    impl->order *= f[i];
    if (impl->order > 4096) throw std::invalid_argument("group: order too large");
  }
  impl->exponent = f.empty() ? 1 : f.back();
  const int N = impl->order;
  impl->mul.resize(static_cast<std::size_t>(N) * N);
  impl->inv.resize(N);
  auto digits = [&](int g) {
    std::vector<int> r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = (g / impl->radix[i]) % f[i];
    return r;
  };
  for (int g = 0; g < N; ++g) {
    auto rg = digits(g);
    int ig = 0;
    for (std::size_t i = 0; i < f.size(); ++i) ig += ((f[i] - rg[i]) % f[i]) * impl->radix[i];
    impl->inv[g] = ig;
    for (int h = 0; h < N; ++h) {
      auto rh = digits(h);
      int p = 0;
      for (std::size_t i = 0; i < f.size(); ++i) p += ((rg[i] + rh[i]) % f[i]) * impl->radix[i];
      impl->mul[static_cast<std::size_t>(g) * N + h] = p;
    }
  }
  p_ = impl;
}

const std::vector<int>& FiniteAbelianGroup::factors() const { return p_->n; }
int FiniteAbelianGroup::order() const { return p_->order; }
int FiniteAbelianGroup::exponent() const { return p_->exponent; }

std::vector<int> FiniteAbelianGroup::element(int index) const {
  if (index < 0 || index >= p_->order) throw std::out_of_range("group: element index");
  std::vector<int> r(p_->n.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (index / p_->radix[i]) % p_->n[i];
  return r;
}

int FiniteAbelianGroup::index(const std::vector<int>& residues) const {
  if (residues.size() != p_->n.size())
    throw std::invalid_argument("group: element has wrong number of components");
  int idx = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    int r = ((residues[i] % p_->n[i]) + p_->n[i]) % p_->n[i];
    idx += r * p_->radix[i];
  }
  return idx;
}

int FiniteAbelianGroup::mul(int g, int h) const {
  return p_->mul[static_cast<std::size_t>(g) * p_->order + h];
}

int FiniteAbelianGroup::inv(int g) const { return p_->inv[g]; }

int FiniteAbelianGroup::generator(int i) const { return p_->radix.at(i); }

int FiniteAbelianGroup::pow(int g, long k) const {
  auto r = element(g);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = static_cast<int>(((static_cast<long>(r[i]) * k) % p_->n[i] + p_->n[i]) % p_->n[i]);
  return index(r);
}

int FiniteAbelianGroup::element_order(int g) const {
  int o = 1;
  auto r = element(g);
  for (std::size_t i = 0; i < r.size(); ++i) o = std::lcm(o, p_->n[i] / std::gcd(p_->n[i], r[i]));
  return o;
}

int FiniteAbelianGroup::char_exponent(int chi, int g) const {
  auto c = element(chi), r = element(g);
  const long e = p_->exponent;
  long k = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    k += static_cast<long>(c[i]) * r[i] * (e / p_->n[i]);
  return static_cast<int>(((k % e) + e) % e);
}

int FiniteAbelianGroup::char_pow(int chi, long a) const { return pow(chi, a); }

bool FiniteAbelianGroup::char_trivial_on(int chi, const std::vector<int>& elements) const {
  for (int g : elements)
    if (char_exponent(chi, g) != 0) return false;
  return true;
}

bool FiniteAbelianGroup::operator==(const FiniteAbelianGroup& o) const {
  return p_ == o.p_ || p_->n == o.p_->n;
}

std::string FiniteAbelianGroup::to_string() const {
  if (p_->n.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < p_->n.size(); ++i) os << (i ? " x " : "") << "Z/" << p_->n[i];
  return os.str();
}

std::vector<int> invariant_factors(const std::vector<long>& cyclic_orders) {
  const std::size_t k = cyclic_orders.size();
  IntMatrix D = IntMatrix::zeros(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    if (cyclic_orders[i] < 1) throw std::invalid_argument("group: cyclic order must be >= 1");
    D(i, i) = cyclic_orders[i];
  }
  std::vector<int> out;
  if (k == 0) return out;
  for (const auto& d : snf(D).diag)
    if (d != 1) out.push_back(static_cast<int>(d.get_si()));
  return out;
}

std::vector<int> generated_subgroup(const FiniteAbelianGroup& G, const std::vector<int>& gens) {
  std::set<int> S{G.identity()};
  std::vector<int> frontier{G.identity()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int g : gens) {
        int y = G.mul(x, g);
        if (S.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  return std::vector<int>(S.begin(), S.end());
}

QuotientGroup quotient_group(const FiniteAbelianGroup& G, const std::vector<int>& gens) {
  const std::size_t k = G.factors().size();
  QuotientGroup q;
  q.subgroup = generated_subgroup(G, gens);
  // Z^k / (diag(n) + span of generators), then Smith form for the structure.
  IntMatrix R = IntMatrix::zeros(k + gens.size(), k);
  for (std::size_t i = 0; i < k; ++i) R(i, i) = G.factors()[i];
  for (std::size_t t = 0; t < gens.size(); ++t) {
    auto r = G.element(gens[t]);
    for (std::size_t i = 0; i < k; ++i) R(k + t, i) = r[i];
  }
  std::vector<int> factors;
  std::vector<std::size_t> keep;
  IntMatrix V;
  if (k > 0) {
    SNFResult s = snf(R);
    V = s.V;
    for (std::size_t i = 0; i < k; ++i) {
      if (s.diag[i] != 1) {
        factors.push_back(static_cast<int>(s.diag[i].get_si()));
        keep.push_back(i);
      }
    }
  }
  q.quotient = FiniteAbelianGroup(factors);
  q.projection.resize(G.order());
  q.coset_reps.assign(q.quotient.order(), -1);
  for (int g = 0; g < G.order(); ++g) {
    auto r = G.element(g);
    std::vector<int> img(keep.size());
    for (std::size_t t = 0; t < keep.size(); ++t) {
      mpz_class s = 0;
      for (std::size_t i = 0; i < k; ++i) s += r[i] * V(i, keep[t]);
      mpz_class m = s % factors[t];
      if (m < 0) m += factors[t];
      img[t] = static_cast<int>(m.get_si());
    }
    int p = q.quotient.index(img);
    q.projection[g] = p;
    if (q.coset_reps[p] < 0) q.coset_reps[p] = g;
  }
  return q;
}

}  // namespace hse
