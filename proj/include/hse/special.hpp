#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hse/complexes.hpp"
#include "hse/exterior.hpp"

namespace hse {

// An isomorphism lambda : Q(zeta) (x) H^1 -> Q(zeta) (x) H^2, stored per
// character as the r_chi x r_chi matrix whose column i holds the coordinates
// of lambda(h1_i) in the basis h2 of the canonical character spaces.
struct LambdaMap {
  FiniteAbelianGroup G;
  std::vector<KMatrix> blocks;

  // The identity in the canonical bases.
  static LambdaMap canonical(const FiniteAbelianGroup& G, const std::vector<CharacterSpaces>& S);
  // lambda(class of v) = class of (M / den) v for a matrix M : D1 -> D2 that
  // carries ker d1 into ker d2.
  static LambdaMap from_matrix(const FiniteAbelianGroup& G, const std::vector<CharacterSpaces>& S,
                               const ZGMatrix& M, const mpz_class& den = 1);
  bool is_isomorphism() const;
  // Blocks at conjugate characters are Galois conjugate.
  bool galois_compatible() const;
};

// Random Galois-compatible isomorphism: an invertible block with entries in
// Z[zeta_m] (m the order of chi) per orbit, conjugated along the orbit.
LambdaMap random_lambda(const FiniteAbelianGroup& G, const std::vector<CharacterSpaces>& S,
                        unsigned seed);

// Moves lambda between complexes along comparison maps on the character spaces:
// h1_to_source(chi, v) sends a degree-one cocycle of the target to one of
// the source, h2_to_target(chi, w) a degree-two cocycle of the source to one
// of the target.
LambdaMap transport_lambda(const LambdaMap& lam, const std::vector<CharacterSpaces>& from,
                           const std::vector<CharacterSpaces>& to,
                           const std::function<KVec(int, const KVec&)>& h1_to_source,
                           const std::function<KVec(int, const KVec&)>& h2_to_target);

// theta_lambda on the canonical basis of Det(C). With per-character bases
// B1 = [d0 | h1 | W1], B2 = [lambda h1 | d1 W1 | W2], B3 = d2 W2 of the
// terms (the standard basis in degree zero) the value is
// u_chi = det B1 det B3 / det B2.
struct ThetaResult {
  std::vector<Cyc> values;  // u_chi
  QG u;                     // assembled element of Q[G]
  IdealLattice lattice;     // Z[G] u
  bool choice_independent = false;  // a second, perturbed choice gives the same values
};
ThetaResult theta_det(const ThreeTermComplex& C, const std::vector<CharacterSpaces>& S,
                      const LambdaMap& lam);
ThetaResult theta_det(const StrictComplex& C, const LambdaMap& lam);
// The same value computed from randomly perturbed choices of W1, W2 and the
// lift of lambda (used to re-verify independence of choices).
std::vector<Cyc> theta_values_perturbed(const std::vector<CharacterSpaces>& S,
                                        const LambdaMap& lam, unsigned seed);

// L := u, the characteristic element for (C, lambda).
QG characteristic_element(const StrictComplex& C, const LambdaMap& lam);

struct SpecialElement {
  int a = 0;
  std::size_t d = 0;
  std::vector<QG> eta;  // coordinates in the basis e_I, I in subsets(d, a)
  Idempotent e_a, e_at_least;
};

// eta with (wedge^a lambda)(eta) = e_a L^-1 wedge(X) character by character.
// X holds degree-two cocycle lifts of the chosen elements as columns.
SpecialElement special_element(const StrictComplex& C, const std::vector<CharacterSpaces>& S,
                               const LambdaMap& lam, const QG& L, const ZGMatrix& X);
SpecialElement special_element(const StrictComplex& C, const LambdaMap& lam, const QG& L,
                               const ZGMatrix& X);

// eta from an adapted basis: with psi' = V^-1 psi (first a rows zero) and
// z = u L^-1 det V,
//   eta = z * sum_I sgn(I, I^c) det(psi'_{i,k})_{i > a, k in I^c} e_I.
std::vector<QG> eta_minor_formula(const AdaptedBasis& B, const QG& u, const QG& L);

// Pads eta from Q[G]^C(d, a) to Q[G]^C(d + k, a) along the first d basis vectors.
std::vector<QG> pad_wedge(const std::vector<QG>& eta, std::size_t d, std::size_t k, int a);

// I(eta): values of wedge products of Z[G]-homomorphisms H^1 -> Z[G].
IdealLattice evaluation_lattice(const std::vector<QG>& eta, const GLattice& H1, int a);

struct CharelsReport {
  int a = 0;
  QG x;
  bool x_valid = false;
  bool fit_inclusion = false;   // x I(eta) in Fit^a(H^2)
  bool ann_inclusion = false;   // x I(eta) in Ann(H^2'_tor)
  bool separable = false;
  bool e_at_least_one = false;  // e_(a) = 1 (when separable)
  bool fit_equality = false;    // I(eta) = Fit^a(H^2) (when separable)
  bool x_eta_integral = false;  // x eta in the exterior bidual
  bool integrality_all = false; // x eta_S in the bidual for all a-subsets S of generators
  IdealLattice I_eta, fit;
  std::string witness;
  bool ok() const;
};
// quotient_relations: optional extra relations (rows over the generators of
// H^2_presented) defining the quotient H^2'.
CharelsReport check_charels(const StrictComplex& C, const LambdaMap& lam, const QG& L,
                            const ZGMatrix& X, const std::optional<ZG>& x = std::nullopt,
                            const std::optional<ZGMatrix>& quotient_relations = std::nullopt);

// Default x = N_a e_(a) with N_a minimal.
ZG default_x(const Idempotent& e_at_least);

struct PairingReport {
  AbelianInvariants left, right;
  std::vector<QVec> left_generators;  // in the exterior power, flattened
  std::vector<QG> right_generators;
  QMatrix matrix;  // values in Q/Z (entries reduced to [0, 1))
  bool well_defined = false;
  bool perfect = false;
  // Orders in the short exact sequence
  // 0 -> (Fit / x I)_tor -> dual of left -> (Z[G] / Fit^{e_a})_tor -> 0.
  mpz_class seq_left = 0, seq_middle = 0, seq_right = 0;
  bool sequence_exact_orders = false;
  std::string witness;
};
PairingReport pairing(const StrictComplex& C, const LambdaMap& lam, const QG& L,
                      const ZGMatrix& X, const std::optional<ZG>& x = std::nullopt);

// Fit^0(Hom(H^1(D), Q/Z)) theta_0(Det D)^-1 = Fit^0(H^2(D)) for D0 -> D1 -> D2
// with finite cohomology. The dual carries the action inherited from
// Ext^1(-, Z[G]), i.e. (g f)(m) = f(g m).
struct FiniteCaseReport {
  bool finite = false;
  IdealLattice lhs, rhs, fit_dual;
  QG u;
  bool equal = false;
};
FiniteCaseReport finite_case_identity(const ThreeTermComplex& D);

// Fitting ideal of the Pontryagin dual of a finite subquotient N / Rel
// under (g f)(m) = f(g m).
IdealLattice dual_fitting_ideal(const Subquotient& M);

// Check (iii) of the reduction to strict complexes: u_C / (x u_{C_x}) is a
// unit of Z[G], with lambda on C_x transported from C.
struct ReductionDetReport {
  bool ok = false;
  QG u_C, u_Cx, ratio;
};
ReductionDetReport reduction_determinant_check(const ThreeTermComplex& C,
                                               const ReductionResult& R, unsigned seed = 1);

IdealLattice involute(const IdealLattice& I);
std::optional<QG> qg_inverse(const QG& x);

}  // namespace hse
