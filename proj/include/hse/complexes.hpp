#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hse/gmodule.hpp"

namespace hse {

// P --psi--> P with P = Z[G]^d in degrees 1 and 2; psi acts on columns.
struct StrictComplex {
  ZGMatrix psi;

  const FiniteAbelianGroup& group() const { return psi.group(); }
  std::size_t d() const { return psi.rows(); }
  void validate() const;  // square
};

// Free complex D0 -> D1 -> D2 -> D3 with D1 in degree one. The degree-zero
// term is optional (s0 = 0 means absent) and D3 may be zero.
struct ThreeTermComplex {
  FiniteAbelianGroup G;
  std::size_t s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  ZGMatrix d0;  // s1 x s0
  ZGMatrix d1;  // s2 x s1
  ZGMatrix d2;  // s3 x s2

  static ThreeTermComplex make(const ZGMatrix& d1, const ZGMatrix& d2);
  static ThreeTermComplex with_degree_zero(const ZGMatrix& d0, const ZGMatrix& d1,
                                           const ZGMatrix& d2);
  static ThreeTermComplex from_strict(const StrictComplex& C);
  // Composites vanish and the Euler characteristic is zero.
  void validate() const;
};

// Cohomology of a complex, as subquotients of the free terms plus
// presentations and per-character dimensions.
struct CohomologyData {
  FiniteAbelianGroup G;
  Subquotient H0, H1, H2, H3;
  std::optional<GLattice> H1_lattice;  // H1 as an embedded lattice when D0 = 0
  PresentedModule H2_presented;
  PresentedModule H3_presented;
  std::vector<int> ranks;  // r_chi = dim of the chi-part of Q(zeta) (x) H^1
  std::vector<int> h2_dims, h3_dims;
};
CohomologyData cohomology(const StrictComplex& C);
CohomologyData cohomology(const ThreeTermComplex& C);

// r_chi = d - rank chi(psi).
std::vector<int> character_ranks(const StrictComplex& C);

// e_a, e_(a) and e_0 (characters where H^3 vanishes).
Idempotent rank_idempotent(const FiniteAbelianGroup& G, const std::vector<int>& ranks, int a);
Idempotent rank_idempotent_at_least(const FiniteAbelianGroup& G, const std::vector<int>& ranks,
                                    int a);

// Canonical per-character bases of a complex over Q(zeta_e). The kernel
// basis of a matrix is its reduced-echelon free-column basis and
// complements are chosen greedily from earlier vectors first; both choices
// commute with Galois conjugation, so data built from them assembles into
// rational group ring elements.
struct CharacterSpaces {
  int chi = 0;
  KMatrix d0, d1, d2;
  std::vector<KVec> h1;  // complement of im d0 in ker d1
  std::vector<KVec> h2;  // lifts in ker d2 spanning a complement of im d1
  std::vector<KVec> w1;  // standard vectors completing ker d1 in degree one
  std::vector<KVec> w2;  // standard vectors completing ker d2 in degree two
  bool h0_zero = true, h3_zero = true;

  std::optional<KVec> h1_coordinates(const KVec& v) const;  // v in ker d1
  std::optional<KVec> h2_coordinates(const KVec& v) const;  // v in ker d2
};
std::vector<CharacterSpaces> character_spaces(const ThreeTermComplex& C);
std::vector<CharacterSpaces> character_spaces(const StrictComplex& C);

// Greedy completion of span(base) by vectors from `candidates`, in order.
std::vector<KVec> greedy_complement(const std::vector<KVec>& base,
                                    const std::vector<KVec>& candidates, std::size_t n);
std::vector<KVec> standard_vectors(std::size_t n);
std::vector<KVec> columns_of(const KMatrix& A);

// --- constructions -----------------------------------------------------------

// C* = RHom(C, Z[G][-3]), represented by psi^T on the dual bases.
StrictComplex dual_complex(const StrictComplex& C);

// Cone of theta : P[-1] + P[-2] -> C for maps theta1 : P -> H^1(C) and
// theta2 : P -> H^2(C) given by cocycle lifts (columns in D1 and D2).
// The differential of cone(f : A -> B) is [[d_B, f], [0, -d_A]] on B + A[1].
struct ConeResult {
  ThreeTermComplex D;
  bool theta1_injective = false;
  bool theta1_cokernel_torsion_free = false;
  bool les_h1 = false;  // H^1(D) has the rank and torsion forced by the sequence
  bool les_h2 = false;  // H^2(D) = cok theta2
  bool les_h3 = false;  // H^3(D) = H^3(C)
  std::string witness;
  bool ok() const {
    return theta1_injective && theta1_cokernel_torsion_free && les_h1 && les_h2 && les_h3;
  }
};
ConeResult cone_with_projective(const ThreeTermComplex& C, std::size_t p,
                                const ZGMatrix& theta1, const ZGMatrix& theta2);

// Reduction of a three-term complex with finite H^3 to a strict one.
struct ReductionResult {
  bool found = false;
  std::string mode;  // "global" or "p-local"
  ZG x;
  StrictComplex Cx;
  ZGMatrix phi;                  // P3 -> P2
  std::vector<std::size_t> minor_columns;
  mpz_class n = 0;
  bool h1_equal = false;         // (i)
  bool h2_finite_index = false;  // (ii) inclusion with finite cokernel
  bool quotient_killed_by_x = false;
  AbelianInvariants quotient;
  std::string reason;
};
ReductionResult reduce_to_strict(const ThreeTermComplex& C, long prime = 0, int max_multiple = 8);

// Adapted basis for a separable X (lifts as columns of a d x a matrix):
// V has columns X, Z with Z a basis of the kernel of a retraction r, so that
// V^-1 psi has its first a rows zero. The source basis is left standard.
// When no free complement is found inside P the complex is stabilized to
// psi + I_a on P + Z[G]^a, where V = [[X, I - X r], [0, r]] always works.
struct AdaptedBasis {
  bool ok = false;
  std::size_t stabilized = 0;  // number of identity summands added
  StrictComplex complex;       // the complex V refers to
  ZGMatrix X;                  // X padded with zeros when stabilized
  ZGMatrix V, Vinv;
  ZGMatrix psi_adapted;  // V^-1 psi
  ZGMatrix retraction;
  std::string reason;
};
AdaptedBasis adapted_basis(const StrictComplex& C, const ZGMatrix& X, unsigned seed = 1,
                           bool allow_stabilization = true);

// psi + I_k on P + Z[G]^k.
StrictComplex stabilize(const StrictComplex& C, std::size_t k);

// Inverse of a unit of Z[G], if it is one.
std::optional<ZG> zg_unit_inverse(const ZG& x);
// det over Z[G] via characters.
ZG zg_det(const ZGMatrix& A);
// Inverse over Z[G] when the determinant is a unit.
std::optional<ZGMatrix> zg_inverse(const ZGMatrix& A);

// --- coinvariants ---------------------------------------------------------------

ZG project_element(const QuotientGroup& Q, const ZG& x);
ZGMatrix project_matrix(const QuotientGroup& Q, const ZGMatrix& A);
// T_J(v) = sum_{j in J} j * lift(v) on flattened vectors of Z[G/J]^n.
QVec norm_lift(const FiniteAbelianGroup& G, const QuotientGroup& Q, const QVec& v);

struct CoinvariantResult {
  QuotientGroup quotient;
  StrictComplex CJ;
  bool h1_fixed_points = false;  // T_J : H^1(C_J) -> H^1(C)^J bijective
  bool h2_coinvariants = false;  // H^2(C_J) and H^2(C)_J have equal invariants
};
CoinvariantResult coinvariants(const StrictComplex& C, const std::vector<int>& subgroup_gens);

// Random unimodular matrix over Z[G] (product of elementary operations).
template <class Rng>
ZGMatrix random_unimodular_zg(const FiniteAbelianGroup& G, std::size_t n, Rng& rng, int steps = -1,
                              int bound = 1);

}  // namespace hse

#include "hse/complexes_impl.hpp"
