#pragma once

#include <gmpxx.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hse/cyclotomic.hpp"
#include "hse/group.hpp"

namespace hse {

// Element sum_g x_g g of T[G], coefficients indexed by group element index.
template <class T>
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(const FiniteAbelianGroup& G)
      : G_(G), c_(G.order(), T(0)) {}
  GroupRingElement(const FiniteAbelianGroup& G, std::vector<T> coeffs)
      : G_(G), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != G_.order())
      throw std::invalid_argument("group ring element: coefficient count");
  }

  static GroupRingElement basis(const FiniteAbelianGroup& G, int g, const T& c = T(1)) {
    GroupRingElement x(G);
    x.c_[g] = c;
    return x;
  }
  static GroupRingElement one(const FiniteAbelianGroup& G) { return basis(G, 0); }
  static GroupRingElement constant(const FiniteAbelianGroup& G, const T& c) {
    return basis(G, 0, c);
  }
  // Norm element sum_{g in S} g.
  static GroupRingElement sum_of(const FiniteAbelianGroup& G, const std::vector<int>& S) {
    GroupRingElement x(G);
    for (int g : S) x.c_[g] += T(1);
    return x;
  }

  const FiniteAbelianGroup& group() const { return G_; }
  const std::vector<T>& coeffs() const { return c_; }
  const T& operator[](int g) const { return c_[g]; }
  T& operator[](int g) { return c_[g]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!(x == T(0))) return false;
    return true;
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  GroupRingElement operator-() const {
    GroupRingElement x = *this;
    for (auto& v : x.c_) v = -v;
    return x;
  }
  GroupRingElement operator*(const GroupRingElement& o) const {
    check(o);
    GroupRingElement p(G_);
    const int n = G_.order();
    for (int g = 0; g < n; ++g) {
      if (c_[g] == T(0)) continue;
      for (int h = 0; h < n; ++h)
        if (!(o.c_[h] == T(0))) p.c_[G_.mul(g, h)] += c_[g] * o.c_[h];
    }
    return p;
  }
  GroupRingElement& operator*=(const GroupRingElement& o) { return *this = *this * o; }
  GroupRingElement scaled(const T& s) const {
    GroupRingElement x = *this;
    for (auto& v : x.c_) v *= s;
    return x;
  }
  // Left multiplication by the group element h.
  GroupRingElement shifted(int h) const {
    GroupRingElement x(G_);
    for (int g = 0; g < G_.order(); ++g) x.c_[G_.mul(h, g)] = c_[g];
    return x;
  }

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) {
    return a += b;
  }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) {
    return a -= b;
  }
  bool operator==(const GroupRingElement& o) const { return G_ == o.G_ && c_ == o.c_; }
  bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

  // The involution x^# = sum x_g g^{-1}.
  GroupRingElement involution() const {
    GroupRingElement x(G_);
    for (int g = 0; g < G_.order(); ++g) x.c_[G_.inv(g)] = c_[g];
    return x;
  }
  T augmentation() const {
    T s(0);
    for (const auto& v : c_) s += v;
    return s;
  }

 private:
  void check(const GroupRingElement& o) const {
    if (!(G_ == o.G_)) throw std::invalid_argument("group ring: mismatched groups");
  }
  FiniteAbelianGroup G_;
  std::vector<T> c_;
};

using ZG = GroupRingElement<mpz_class>;
using QG = GroupRingElement<mpq_class>;
using KG = GroupRingElement<Cyc>;

QG to_rational(const ZG& x);
// Throws std::domain_error if some coefficient is not an integer.
ZG to_integral(const QG& x);
bool is_integral(const QG& x);
KG to_cyclotomic(const QG& x);

// "3 - [1] + 1/2*[0,1]" style rendering with element tuples in brackets.
template <class T>
std::string format_element(const GroupRingElement<T>& x) {
  std::ostringstream os;
  bool first = true;
  const auto& G = x.group();
  for (int g = 0; g < G.order(); ++g) {
    if (x[g] == T(0)) continue;
    std::ostringstream cs;
    cs << x[g];
    std::string s = cs.str();
    bool neg = !s.empty() && s[0] == '-';
    if (neg) s = s.substr(1);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (g == 0) {
      os << s;
      continue;
    }
    if (s != "1") os << s << "*";
    os << "[";
    auto r = G.element(g);
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "]";
  }
  return first ? "0" : os.str();
}

}  // namespace hse
