#include "hse/characters.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace hse {

QG to_rational(const ZG& x) {
  std::vector<mpq_class> c(x.coeffs().begin(), x.coeffs().end());
  return QG(x.group(), std::move(c));
}

bool is_integral(const QG& x) {
  for (const auto& q : x.coeffs())
    if (q.get_den() != 1) return false;
  return true;
}

ZG to_integral(const QG& x) {
  ZG z(x.group());
  for (int g = 0; g < x.group().order(); ++g) {
    if (x[g].get_den() != 1) throw std::domain_error("group ring element is not integral");
    z[g] = x[g].get_num();
  }
  return z;
}

KG to_cyclotomic(const QG& x) {
  std::vector<Cyc> c;
  c.reserve(x.coeffs().size());
  for (const auto& q : x.coeffs()) c.emplace_back(q);
  return KG(x.group(), std::move(c));
}

Cyc char_value(const FiniteAbelianGroup& G, int chi, int g) {
  return Cyc::zeta(G.exponent(), G.char_exponent(chi, g));
}

namespace {

// acc[(i*e/m + shift) mod e] += coefficient i of v, for v of conductor m | e.
void accumulate(std::vector<mpq_class>& acc, const Cyc& v, int shift) {
  const int e = static_cast<int>(acc.size());
  const int m = v.conductor();
  if (e % m) throw std::invalid_argument("character transform: conductor mismatch");
  const int step = e / m;
  const auto& c = v.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    acc[((static_cast<int>(i) * step + shift) % e + e) % e] += c[i];
  }
}

template <class T>
std::vector<Cyc> coords_impl(const GroupRingElement<T>& x) {
  const auto& G = x.group();
  const int e = G.exponent();
  std::vector<Cyc> out(G.order());
  for (int chi = 0; chi < G.order(); ++chi) {
    std::vector<mpq_class> acc(e, mpq_class(0));
    for (int g = 0; g < G.order(); ++g) {
      if (x[g] == T(0)) continue;
      accumulate(acc, Cyc(x[g]), G.char_exponent(chi, g));
    }
    out[chi] = Cyc::from_coeffs(e, std::move(acc));
  }
  return out;
}

}  // namespace

std::vector<Cyc> char_coords(const ZG& x) { return coords_impl(x); }
std::vector<Cyc> char_coords(const QG& x) { return coords_impl(x); }
std::vector<Cyc> char_coords(const KG& x) { return coords_impl(x); }

KG from_char_coords(const FiniteAbelianGroup& G, const std::vector<Cyc>& v) {
  if (static_cast<int>(v.size()) != G.order())
    throw std::invalid_argument("from_char_coords: expected one coordinate per character");
  const int e = G.exponent();
  const mpq_class inv_order(1, G.order());
  KG x(G);
  for (int g = 0; g < G.order(); ++g) {
    std::vector<mpq_class> acc(e, mpq_class(0));
    for (int chi = 0; chi < G.order(); ++chi) {
      if (v[chi].is_zero()) continue;
      accumulate(acc, v[chi], -G.char_exponent(chi, g));
    }
    x[g] = Cyc::from_coeffs(e, std::move(acc)) * Cyc(inv_order);
  }
  return x;
}

std::optional<QG> rational_from_char_coords(const FiniteAbelianGroup& G,
                                            const std::vector<Cyc>& v) {
  KG x = from_char_coords(G, v);
  QG q(G);
  for (int g = 0; g < G.order(); ++g) {
    if (!x[g].is_rational()) return std::nullopt;
    q[g] = x[g].rational();
  }
  return q;
}

bool integrality_test(const FiniteAbelianGroup& G, const std::vector<Cyc>& v) {
  const int e = G.exponent();
  for (int chi = 0; chi < G.order(); ++chi) {
    if (!v[chi].is_integral()) return false;
    // Galois equivariance: sigma_a(v_chi) = v_{chi^a}.
    for (int a = 2; a < e; ++a) {
      if (std::gcd(a, e) != 1) continue;
      if (v[chi].galois(a) != v[G.char_pow(chi, a)]) return false;
    }
  }
  auto q = rational_from_char_coords(G, v);
  return q && is_integral(*q);
}

std::vector<int> galois_orbit(const FiniteAbelianGroup& G, int chi) {
  std::set<int> orbit;
  const int e = G.exponent();
  for (int a = 1; a <= e; ++a)
    if (std::gcd(a, e) == 1) orbit.insert(G.char_pow(chi, a));
  return std::vector<int>(orbit.begin(), orbit.end());
}

bool galois_stable(const FiniteAbelianGroup& G, const std::vector<bool>& support) {
  for (int chi = 0; chi < G.order(); ++chi)
    for (int psi : galois_orbit(G, chi))
      if (support[psi] != support[chi]) return false;
  return true;
}

Idempotent idempotent(const FiniteAbelianGroup& G, const std::vector<bool>& support) {
  if (static_cast<int>(support.size()) != G.order())
    throw std::invalid_argument("idempotent: support size");
  if (!galois_stable(G, support)) throw std::invalid_argument("idempotent: support not Galois stable");
  std::vector<Cyc> v(G.order());
  for (int chi = 0; chi < G.order(); ++chi) v[chi] = Cyc(support[chi] ? 1L : 0L);
  Idempotent out;
  out.support = support;
  out.e = *rational_from_char_coords(G, v);
  for (const auto& q : out.e.coeffs())
    mpz_lcm(out.N.get_mpz_t(), out.N.get_mpz_t(), q.get_den_mpz_t());
  return out;
}

std::vector<bool> support_equal(const std::vector<int>& values, int a) {
  std::vector<bool> s(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) s[i] = values[i] == a;
  return s;
}

std::vector<bool> support_at_least(const std::vector<int>& values, int a) {
  std::vector<bool> s(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) s[i] = values[i] >= a;
  return s;
}

}  // namespace hse
