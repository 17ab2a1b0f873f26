#include "hse/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hse {

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<long>& cyclotomic_polynomial(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<long>> cache;
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n < 1");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    const std::vector<long>& den = cyclotomic_polynomial(d);
    const int dd = static_cast<int>(den.size()) - 1;
    const int dn = static_cast<int>(num.size()) - 1;
    std::vector<long> q(dn - dd + 1, 0);
    for (int k = dn; k >= dd; --k) {
      long t = num[k];  // divisor is monic
      q[k - dd] = t;
      if (t == 0) continue;
      for (int j = 0; j <= dd; ++j) num[k - dd + j] -= t * den[j];
    }
    num = q;
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(num)).first->second;
}

namespace {

void reduce_mod_phi(int n, std::vector<mpq_class>& c) {
  const std::vector<long>& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = c.size(); k-- > deg;) {
    if (c[k] == 0) continue;
    mpq_class t = c[k];
    for (std::size_t j = 0; j < deg; ++j)
      if (phi[j] != 0) c[k - deg + j] -= t * phi[j];
    c[k] = 0;
  }
  c.resize(deg, mpq_class(0));
}

// Coefficients of x written in conductor N (a multiple of x's conductor),
// without collapsing rational values.
std::vector<mpq_class> lift(const Cyc& x, int N) {
  const int n = x.conductor();
  if (N % n) throw std::invalid_argument("Cyc: conductor does not divide target");
  if (N == 1) return x.coeffs();
  std::vector<mpq_class> c(N, mpq_class(0));
  const int step = N / n;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) c[(i * step) % N] += x.coeffs()[i];
  reduce_mod_phi(N, c);
  return c;
}

}  // namespace

int common_conductor(const Cyc& a, const Cyc& b) {
  return std::lcm(a.conductor(), b.conductor());
}

void Cyc::reduce() {
  reduce_mod_phi(n_, c_);
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return;
  n_ = 1;
  c_.resize(1);
}

Cyc Cyc::zeta(int n, long k) {
  if (n < 1) throw std::invalid_argument("Cyc::zeta: n < 1");
  std::vector<mpq_class> c(n, mpq_class(0));
  c[((k % n) + n) % n] = 1;
  return from_coeffs(n, std::move(c));
}

Cyc Cyc::from_coeffs(int n, std::vector<mpq_class> coeffs) {
  Cyc x;
  x.n_ = n;
  x.c_ = std::move(coeffs);
  if (x.c_.empty()) x.c_.push_back(0);
  x.reduce();
  return x;
}

bool Cyc::is_zero() const { return n_ == 1 && c_[0] == 0; }

const mpq_class& Cyc::rational() const {
  if (n_ != 1) throw std::domain_error("Cyc: value is not rational");
  return c_[0];
}

bool Cyc::is_integral() const {
  for (const auto& q : c_)
    if (q.get_den() != 1) return false;
  return true;
}

Cyc Cyc::promoted(int n) const {
  Cyc x;
  x.n_ = n;
  x.c_ = lift(*this, n);
  x.reduce();
  return x;
}

Cyc& Cyc::operator+=(const Cyc& o) {
  if (n_ == o.n_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  } else {
    const int N = common_conductor(*this, o);
    c_ = lift(*this, N);
    auto oc = lift(o, N);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += oc[i];
    n_ = N;
  }
  reduce();
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) { return *this += -o; }

Cyc Cyc::operator-() const {
  Cyc x = *this;
  for (auto& q : x.c_) q = -q;
  return x;
}

Cyc& Cyc::operator*=(const Cyc& o) {
  if (o.n_ == 1) {
    for (auto& q : c_) q *= o.c_[0];
    if (o.c_[0] == 0) reduce();
    return *this;
  }
  if (n_ == 1) {
    mpq_class s = c_[0];
    *this = o;
    for (auto& q : c_) q *= s;
    if (s == 0) reduce();
    return *this;
  }
  const int N = common_conductor(*this, o);
  auto a = lift(*this, N), b = lift(o, N);
  std::vector<mpq_class> p(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) p[i + j] += a[i] * b[j];
  }
  n_ = N;
  c_ = std::move(p);
  reduce();
  return *this;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw std::domain_error("Cyc: inverse of zero");
  if (n_ == 1) return Cyc(mpq_class(1) / c_[0]);
  // Solve M y = e_0 where column j of M is x * zeta^j.
  const std::size_t m = c_.size();
  std::vector<std::vector<mpq_class>> A(m, std::vector<mpq_class>(m + 1, mpq_class(0)));
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<mpq_class> col = lift(mul_zeta(static_cast<long>(j)), n_);
    for (std::size_t i = 0; i < m; ++i) A[i][j] = col[i];
  }
  A[0][m] = 1;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t p = k;
    while (A[p][k] == 0) ++p;
    std::swap(A[p], A[k]);
    mpq_class inv = mpq_class(1) / A[k][k];
    for (std::size_t j = k; j <= m; ++j) A[k][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == k || A[i][k] == 0) continue;
      mpq_class f = A[i][k];
      for (std::size_t j = k; j <= m; ++j) A[i][j] -= f * A[k][j];
    }
  }
  std::vector<mpq_class> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = A[i][m];
  return from_coeffs(n_, std::move(y));
}

Cyc Cyc::galois(long a) const {
  if (n_ == 1) return *this;
  if (std::gcd(((a % n_) + n_) % n_, static_cast<long>(n_)) != 1)
    throw std::invalid_argument("Cyc::galois: exponent not a unit");
  std::vector<mpq_class> c(n_, mpq_class(0));
  const long am = ((a % n_) + n_) % n_;
  for (std::size_t i = 0; i < c_.size(); ++i) c[(am * static_cast<long>(i)) % n_] += c_[i];
  return from_coeffs(n_, std::move(c));
}

Cyc Cyc::mul_zeta(long k) const {
  if (n_ == 1) {
    // zeta_1 = 1: the caller must promote first to use a larger root.
    return *this;
  }
  std::vector<mpq_class> c(n_, mpq_class(0));
  const long km = ((k % n_) + n_) % n_;
  for (std::size_t i = 0; i < c_.size(); ++i) c[(static_cast<long>(i) + km) % n_] += c_[i];
  return from_coeffs(n_, std::move(c));
}

std::string Cyc::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const mpq_class& q = c_[i];
    if (q == 0) continue;
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    mpq_class aq = abs(q);
    if (i == 0) os << aq;
    else {
      if (aq != 1) os << aq << "*";
      os << "z" << n_;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace hse
