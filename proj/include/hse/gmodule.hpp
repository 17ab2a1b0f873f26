#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hse/zgmatrix.hpp"

namespace hse {

// Z-lattice with a G-action. The action of g on basis coordinates is the
// matrix A_g with g * b_k = sum_l A_g(k, l) b_l (row-vector convention).
// When `embedding` is present its rows are the basis vectors written in
// Q[G]^ambient_rank (flattened), and the action is the one induced there.
struct GLattice {
  FiniteAbelianGroup G;
  std::vector<IntMatrix> action;  // one per group element, by index
  std::optional<QMatrix> embedding;
  std::size_t ambient_rank = 0;

  std::size_t zrank() const { return action.empty() ? 0 : action[0].rows(); }
  std::vector<IntMatrix> generator_action() const;  // one per cyclic factor

  // G-stable lattice inside Q[G]^d, basis taken from the canonical HNF.
  static GLattice embedded(const FiniteAbelianGroup& G, std::size_t d, const ZLattice& L);
  // Abstract lattice from generator matrices (one per cyclic factor).
  static GLattice from_generators(const FiniteAbelianGroup& G,
                                  const std::vector<IntMatrix>& gens);
  ZLattice lattice() const;  // requires an embedding
};

// Fractional ideal of Z[G]: a G-stable Z-lattice in Q[G].
class IdealLattice {
 public:
  IdealLattice() = default;
  IdealLattice(const FiniteAbelianGroup& G, ZLattice L);  // checks G-stability
  static IdealLattice zero(const FiniteAbelianGroup& G);
  static IdealLattice unit(const FiniteAbelianGroup& G);
  static IdealLattice generated_by(const FiniteAbelianGroup& G, const std::vector<QG>& gens);

  const FiniteAbelianGroup& group() const { return G_; }
  const ZLattice& lattice() const { return L_; }
  bool is_zero() const { return L_.is_zero(); }
  bool contains(const QG& x) const;
  bool contains(const IdealLattice& o) const { return L_.contains(o.L_); }
  IdealLattice times(const QG& x) const;
  IdealLattice operator*(const IdealLattice& o) const;
  IdealLattice operator+(const IdealLattice& o) const;
  IdealLattice intersect(const IdealLattice& o) const;
  bool operator==(const IdealLattice& o) const { return L_ == o.L_; }
  bool operator!=(const IdealLattice& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  FiniteAbelianGroup G_;
  ZLattice L_;
};

// cok(Q) for Q over Z[G] with s relation rows and m generator columns.
struct PresentedModule {
  FiniteAbelianGroup G;
  std::size_t generators = 0;
  ZGMatrix relations;  // s x m

  static PresentedModule cokernel(const ZGMatrix& A);  // cok(A: Z[G]^c -> Z[G]^r)
  // Relation lattice inside Z^(m|G|) (the Z[G]-span of the relation rows).
  ZLattice relation_lattice() const;
  AbelianInvariants invariants() const;
};

// A Z[G]-module given as a subquotient N / Rel of Q[G]^d (flattened), with
// Rel contained in N and both G-stable.
struct Subquotient {
  FiniteAbelianGroup G;
  std::size_t d = 0;
  ZLattice N, Rel;
  AbelianInvariants invariants() const { return N.quotient_invariants(Rel); }
};

// Presentation of a subquotient: chosen Z[G]-generators (as vectors of N)
// and a relation matrix. Relations are a greedy Z[G]-generating set of the
// kernel of Z[G]^k -> N/Rel.
struct Presentation {
  PresentedModule module;
  std::vector<QVec> generator_images;
};
Presentation present_subquotient(const Subquotient& M);

IdealLattice fitting_ideal(const PresentedModule& M, int a);
IdealLattice annihilator(const Subquotient& M);
IdealLattice annihilator(const PresentedModule& M);
// Annihilator of the Z-torsion submodule.
IdealLattice torsion_annihilator(const PresentedModule& M);

struct TorsionDecomposition {
  std::vector<mpz_class> torsion_invariants;
  std::size_t free_rank = 0;
  Subquotient torsion;         // M_tor as a subquotient of Z[G]^m
  GLattice torsion_free;       // M_tf with induced action (abstract)
};
TorsionDecomposition torsion_decomp(const PresentedModule& M);

// Retraction r : Z[G]^d / colspan(rel) -> Z[G]^a with r(x_i) = e_i, as an
// a x d matrix over Z[G] with r * rel = 0 and r * X = I.
struct SeparabilityResult {
  bool separable = false;
  std::optional<ZGMatrix> retraction;
  std::string reason;
};
SeparabilityResult separability_test(const ZGMatrix& rel, const ZGMatrix& X);

// --- duals -----------------------------------------------------------------

// Hom_Z[G](M, Z[G]) via the transport isomorphism with Hom_Z(M, Z): the dual
// basis carries the transposed action. If M is embedded, the dual is embedded
// too, by phi -> (F_i^#)_i where F is the dual-basis vector in Q M.
GLattice zg_dual(const GLattice& M);

// The Z[G]-map attached to f in Hom_Z(M, Z) (values on the basis):
// phi(v) = sum_g f(g^-1 v) g. Returned as the functional vector F in Q M
// with phi(v)_g = F . (g^-1 v); requires an embedding.
QVec transport_functional(const GLattice& M, const IntVec& f);
// phi_F(v) for a flattened ambient vector v.
QG apply_functional(const FiniteAbelianGroup& G, const QVec& F, const QVec& v);

// Direct check of reflexivity: Hom is computed as an equivariance kernel,
// the identity-coefficient map to Hom_Z(M, Z) must be bijective, and the
// evaluation map M -> M** must be bijective.
struct ReflexivityReport {
  bool hom_rank_ok = false;
  bool transport_bijective = false;
  bool evaluation_bijective = false;
  bool reflexive() const { return hom_rank_ok && transport_bijective && evaluation_bijective; }
};
ReflexivityReport reflexivity_check(const GLattice& M);

// Basis (as integer n x |G| matrices T with T(m_k) = row k) of
// Hom_Z[G](M, Z[G]) computed by solving the equivariance conditions.
std::vector<IntMatrix> equivariant_homs(const GLattice& M);

}  // namespace hse
