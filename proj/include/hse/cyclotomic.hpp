#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <vector>

namespace hse {

// Coefficients of the n-th cyclotomic polynomial, constant term first.
// Results are cached process-wide behind a mutex.
const std::vector<long>& cyclotomic_polynomial(int n);
int euler_phi(int n);

// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1),
// reduced modulo Phi_n. Values that happen to be rational are stored with
// conductor 1 so that equality is structural. Arithmetic between two
// irrational values requires equal conductors.
class Cyc {
 public:
  Cyc() : n_(1), c_(1) {}
  Cyc(long v) : n_(1), c_(1, mpq_class(v)) {}  // NOLINT(runtime/explicit)
  Cyc(const mpz_class& v) : n_(1), c_(1, mpq_class(v)) {}  // NOLINT
  Cyc(const mpq_class& v) : n_(1), c_(1, v) {}  // NOLINT

  static Cyc zeta(int n, long k);
  // Reduces an arbitrary-length coefficient vector modulo Phi_n.
  static Cyc from_coeffs(int n, std::vector<mpq_class> coeffs);

  int conductor() const { return n_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const { return n_ == 1; }
  const mpq_class& rational() const;  // throws unless rational
  bool is_integral() const;

  Cyc inverse() const;
  Cyc galois(long a) const;    // zeta -> zeta^a, gcd(a, n) = 1
  Cyc mul_zeta(long k) const;  // times zeta_n^k
  Cyc promoted(int n) const;   // same value written in conductor n

  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);
  Cyc& operator/=(const Cyc& o) { return *this *= o.inverse(); }
  Cyc operator-() const;

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }
  friend Cyc operator/(Cyc a, const Cyc& b) { return a /= b; }
  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    if (a.n_ == 1 || b.n_ == 1) return false;
    return (a - b).is_zero();
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  // "a0 + a1*z + ..." with z = zeta_n; "0" for zero.
  std::string to_string() const;

 private:
  void reduce();
  int n_;
  std::vector<mpq_class> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Cyc& x) {
  return x.is_rational() ? os << x.rational() : os << "(" << x.to_string() << ")";
}

// Common conductor of a and b (throws on mismatch of two irrational values).
int common_conductor(const Cyc& a, const Cyc& b);

}  // namespace hse
