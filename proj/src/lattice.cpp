#include "hse/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace hse {

mpz_class common_denominator(const QVec& v) {
  mpz_class d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

IntVec scale_to_integers(const QVec& v, const mpz_class& den) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpq_class s = v[i] * den;
    if (s.get_den() != 1) throw std::invalid_argument("scale_to_integers: not integral");
    out[i] = s.get_num();
  }
  return out;
}

void ZLattice::normalize() {
  B_ = B_.rows() == 0 ? IntMatrix(0, n_) : hnf_basis(B_);
  mpz_class g = den_;
  for (std::size_t i = 0; i < B_.rows(); ++i)
    for (std::size_t j = 0; j < n_; ++j)
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), B_(i, j).get_mpz_t());
  if (B_.rows() == 0) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    den_ /= g;
    for (std::size_t i = 0; i < B_.rows(); ++i)
      for (std::size_t j = 0; j < n_; ++j) B_(i, j) /= g;
  }
}

ZLattice ZLattice::from_rows(const IntMatrix& rows, const mpz_class& den) {
  if (den <= 0) throw std::invalid_argument("ZLattice: denominator must be positive");
  ZLattice L;
  L.n_ = rows.cols();
  L.den_ = den;
  L.B_ = rows;
  L.normalize();
  return L;
}

ZLattice ZLattice::from_rows(const QMatrix& rows, std::size_t n) {
  if (rows.rows() > 0 && rows.cols() != n) throw std::invalid_argument("ZLattice: width");
  mpz_class d = 1;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    mpz_class di = common_denominator(rows.row(i));
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), di.get_mpz_t());
  }
  IntMatrix B(rows.rows(), n);
  for (std::size_t i = 0; i < rows.rows(); ++i) B.set_row(i, scale_to_integers(rows.row(i), d));
  ZLattice L = from_rows(B, d);
  L.n_ = n;
  if (L.B_.rows() == 0) L.B_ = IntMatrix(0, n);
  return L;
}

ZLattice ZLattice::standard(std::size_t n) { return from_rows(IntMatrix::identity(n)); }

QMatrix ZLattice::basis() const {
  QMatrix q(B_.rows(), n_);
  for (std::size_t i = 0; i < B_.rows(); ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      q(i, j) = mpq_class(B_(i, j), den_);
      q(i, j).canonicalize();
    }
  return q;
}

QVec ZLattice::basis_row(std::size_t i) const {
  QVec v(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    v[j] = mpq_class(B_(i, j), den_);
    v[j].canonicalize();
  }
  return v;
}

namespace {

// Both lattices rescaled to a common denominator.
IntMatrix rescaled(const ZLattice& L, const mpz_class& d) {
  IntMatrix B = L.basis_numerators();
  mpz_class f = d / L.denominator();
  if (f != 1)
    for (std::size_t i = 0; i < B.rows(); ++i)
      for (std::size_t j = 0; j < B.cols(); ++j) B(i, j) *= f;
  return B;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

ZLattice ZLattice::operator+(const ZLattice& o) const {
  if (n_ != o.n_) throw std::invalid_argument("lattice sum: dimension");
  mpz_class d = lcm(den_, o.den_);
  return from_rows(vstack(rescaled(*this, d), rescaled(o, d)), d);
}

ZLattice ZLattice::intersect(const ZLattice& o) const {
  if (n_ != o.n_) throw std::invalid_argument("lattice intersection: dimension");
  if (is_zero() || o.is_zero()) return ZLattice(n_);
  mpz_class d = lcm(den_, o.den_);
  IntMatrix A = rescaled(*this, d), B = rescaled(o, d);
  IntMatrix K = left_kernel(vstack(A, B));
  IntMatrix rows(K.rows(), n_);
  for (std::size_t k = 0; k < K.rows(); ++k) {
    IntVec kr = K.row(k);
    IntVec x(kr.begin(), kr.begin() + A.rows());
    rows.set_row(k, A.left_apply(x));
  }
  ZLattice L = from_rows(rows, d);
  L.n_ = n_;
  if (L.B_.rows() == 0) L.B_ = IntMatrix(0, n_);
  return L;
}

ZLattice ZLattice::scaled(const mpq_class& c) const {
  if (c == 0) return ZLattice(n_);
  IntMatrix B = B_;
  mpz_class num = c.get_num();
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < n_; ++j) B(i, j) *= num;
  ZLattice L = from_rows(B, den_ * mpz_class(abs(c.get_den())));
  L.n_ = n_;
  return L;
}

ZLattice ZLattice::image(const QMatrix& M) const {
  if (M.rows() != n_) throw std::invalid_argument("lattice image: shape");
  QMatrix img = basis() * M;
  return from_rows(img, M.cols());
}

std::optional<IntVec> ZLattice::coordinates(const QVec& v) const {
  if (v.size() != n_) throw std::invalid_argument("lattice coordinates: dimension");
  IntVec rem(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    mpq_class s = v[j] * den_;
    if (s.get_den() != 1) return std::nullopt;
    rem[j] = s.get_num();
  }
  IntVec c(B_.rows(), 0);
  std::size_t r = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    bool pivot = r < B_.rows() && B_(r, j) != 0;
    if (!pivot) {
      if (rem[j] != 0) return std::nullopt;
      continue;
    }
    if (rem[j] % B_(r, j) != 0) return std::nullopt;
    c[r] = rem[j] / B_(r, j);
    if (c[r] != 0)
      for (std::size_t k = j; k < n_; ++k) rem[k] -= c[r] * B_(r, k);
    ++r;
  }
  return c;
}

bool ZLattice::contains(const QVec& v) const { return coordinates(v).has_value(); }

bool ZLattice::contains(const ZLattice& o) const {
  if (o.n_ != n_) return false;
  for (std::size_t i = 0; i < o.rank(); ++i)
    if (!contains(o.basis_row(i))) return false;
  return true;
}

namespace {

IntMatrix relative_coordinates(const ZLattice& super, const ZLattice& sub) {
  IntMatrix C(sub.rank(), super.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto c = super.coordinates(sub.basis_row(i));
    if (!c) throw std::invalid_argument("quotient: sublattice not contained");
    C.set_row(i, *c);
  }
  return C;
}

}  // namespace

AbelianInvariants ZLattice::quotient_invariants(const ZLattice& sub) const {
  return cokernel_invariants(relative_coordinates(*this, sub), rank());
}

std::vector<QVec> ZLattice::quotient_generators(const ZLattice& sub) const {
  IntMatrix C = relative_coordinates(*this, sub);
  const std::size_t r = rank();
  std::vector<QVec> torsion, free;
  if (C.rows() == 0) {
    for (std::size_t i = 0; i < r; ++i) free.push_back(basis_row(i));
    return free;
  }
  SNFResult s = snf(C);
  QMatrix F = to_rational(s.Vinv) * basis();
  for (std::size_t i = 0; i < r; ++i) {
    mpz_class si = i < s.diag.size() ? s.diag[i] : mpz_class(0);
    if (si == 1) continue;
    (si == 0 ? free : torsion).push_back(F.row(i));
  }
  torsion.insert(torsion.end(), free.begin(), free.end());
  return torsion;
}

ZLattice ZLattice::saturation() const {
  if (is_zero()) return *this;
  IntMatrix K = right_kernel(B_);
  if (K.rows() == 0) return standard(n_);
  IntMatrix S = left_kernel(K.transpose());
  return from_rows(S);
}

std::string ZLattice::to_string() const {
  std::ostringstream os;
  os << "(1/" << den_ << ")[";
  for (std::size_t i = 0; i < B_.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? " " : "") << B_(i, j);
  }
  os << "]";
  return os.str();
}

}  // namespace hse
