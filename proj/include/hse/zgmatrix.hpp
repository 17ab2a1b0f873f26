#pragma once

#include <vector>

#include "hse/characters.hpp"
#include "hse/fieldlinalg.hpp"
#include "hse/group_ring.hpp"
#include "hse/lattice.hpp"

namespace hse {

// Matrix over Z[G] acting on column vectors. Elements of Z[G]^d are
// flattened to Z^(d|G|) with index i*|G| + h.
class ZGMatrix {
 public:
  ZGMatrix() = default;
  ZGMatrix(const FiniteAbelianGroup& G, std::size_t r, std::size_t c);

  static ZGMatrix identity(const FiniteAbelianGroup& G, std::size_t n);
  static ZGMatrix from_columns(const FiniteAbelianGroup& G, std::size_t rows,
                               const std::vector<std::vector<ZG>>& cols);

  const FiniteAbelianGroup& group() const { return G_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  ZG& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const ZG& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<ZG> column(std::size_t j) const;
  std::vector<ZG> row(std::size_t i) const;
  ZGMatrix operator*(const ZGMatrix& o) const;
  ZGMatrix operator+(const ZGMatrix& o) const;
  ZGMatrix transpose() const;
  ZGMatrix select_columns(const std::vector<std::size_t>& idx) const;
  ZGMatrix select_rows(const std::vector<std::size_t>& idx) const;
  std::vector<ZG> apply(const std::vector<ZG>& v) const;
  bool operator==(const ZGMatrix& o) const;
  bool is_zero() const;

  // Restriction of scalars: R with flat(A v) = flat(v) R, so the image of A
  // is rowspan(R) and ker A is the left kernel of R.
  IntMatrix restriction() const;
  // Entrywise chi, giving a matrix over Q(zeta_e).
  KMatrix at_character(int chi) const;

 private:
  FiniteAbelianGroup G_;
  std::size_t r_ = 0, c_ = 0;
  std::vector<ZG> a_;
};

IntVec flatten(const std::vector<ZG>& v);
QVec flatten(const std::vector<QG>& v);
std::vector<ZG> unflatten_int(const FiniteAbelianGroup& G, const IntVec& v);
std::vector<QG> unflatten(const FiniteAbelianGroup& G, const QVec& v);

// g acting on a flattened vector of Q[G]^d.
QVec shift_flat(const FiniteAbelianGroup& G, const QVec& v, int g);
IntVec shift_flat(const FiniteAbelianGroup& G, const IntVec& v, int g);
// Z-span of all G-translates of the given flattened vectors.
ZLattice zg_span(const FiniteAbelianGroup& G, std::size_t n_flat, const std::vector<QVec>& vs);
ZLattice zg_span(const FiniteAbelianGroup& G, const ZLattice& L);
bool is_g_stable(const FiniteAbelianGroup& G, const ZLattice& L);

// Greedy Z[G]-generators of a G-stable lattice, picked from its Z-basis.
std::vector<QVec> zg_generators(const FiniteAbelianGroup& G, const ZLattice& L);

// Character coordinates of a flattened vector: out[chi][i] = chi(v_i).
std::vector<KVec> vector_char_coords(const FiniteAbelianGroup& G, const QVec& v);

}  // namespace hse
