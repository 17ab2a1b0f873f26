#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hse/intlinalg.hpp"

namespace hse {

// A full-or-partial rank Z-lattice in Q^n, stored as (1/den) * rowspan(B)
// with B in row HNF and gcd(den, entries of B) = 1. Two lattices are equal
// iff their stored forms agree.
class ZLattice {
 public:
  ZLattice() = default;
  explicit ZLattice(std::size_t n) : n_(n), B_(0, n) {}  // zero lattice

  static ZLattice from_rows(const IntMatrix& rows, const mpz_class& den = 1);
  static ZLattice from_rows(const QMatrix& rows, std::size_t n);
  static ZLattice standard(std::size_t n);  // Z^n

  std::size_t ambient_dim() const { return n_; }
  std::size_t rank() const { return B_.rows(); }
  const IntMatrix& basis_numerators() const { return B_; }
  const mpz_class& denominator() const { return den_; }
  QMatrix basis() const;  // rows
  QVec basis_row(std::size_t i) const;

  ZLattice operator+(const ZLattice& o) const;
  ZLattice intersect(const ZLattice& o) const;
  ZLattice scaled(const mpq_class& c) const;
  // Image under v -> v * M (M is n x n', rational).
  ZLattice image(const QMatrix& M) const;

  bool contains(const QVec& v) const;
  bool contains(const ZLattice& o) const;
  // Coordinates of v in the stored basis, if v is in the lattice.
  std::optional<IntVec> coordinates(const QVec& v) const;

  // Invariants of this / sub. Requires sub to be contained in this.
  AbelianInvariants quotient_invariants(const ZLattice& sub) const;
  // Generators of this / sub (finite or not) whose classes generate it,
  // one per nontrivial invariant; free generators come last.
  std::vector<QVec> quotient_generators(const ZLattice& sub) const;

  // Smallest saturated lattice Q(L) intersect Z^n.
  ZLattice saturation() const;
  bool is_integral() const { return den_ == 1; }
  bool is_zero() const { return B_.rows() == 0; }

  bool operator==(const ZLattice& o) const {
    return n_ == o.n_ && den_ == o.den_ && B_ == o.B_;
  }
  bool operator!=(const ZLattice& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void normalize();
  std::size_t n_ = 0;
  mpz_class den_ = 1;
  IntMatrix B_;
};

// Common-denominator helpers.
mpz_class common_denominator(const QVec& v);
IntVec scale_to_integers(const QVec& v, const mpz_class& den);

}  // namespace hse
