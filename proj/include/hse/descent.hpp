#pragma once

#include <string>
#include <vector>

#include "hse/special.hpp"

namespace hse {

// Q_k = I(J)^k / I(J)^{k+1} for the augmentation ideal I(J) of Z[J], with
// Z[J] sitting inside Z[G] (elements of Z[G] supported on J).
struct AugmentationQuotient {
  FiniteAbelianGroup G;
  std::vector<int> subgroup;
  int k = 0;
  ZLattice Ik, Ik1;  // I^k and I^{k+1} in Z^|G|
  AbelianInvariants invariants;
  std::vector<ZG> generators;  // cyclic generators in invariant order

  // Both x and y in Z[J]; equality of classes modulo I^{k+1}.
  bool congruent(const ZG& x, const ZG& y) const;
  bool in_Q(const ZG& x) const { return Ik.contains(flatten(std::vector<QG>{to_rational(x)})); }
};
AugmentationQuotient augmentation_quotient(const FiniteAbelianGroup& G,
                                           const std::vector<int>& subgroup_gens, int k);

// j -> (j - 1) mod I^2 is a bijection J -> Q_1.
bool augmentation_iso_check(const AugmentationQuotient& Q1);

// Coefficientwise lift Z[G/J] -> Z[G] along the coset representatives.
ZG lift_element(const FiniteAbelianGroup& G, const QuotientGroup& Q, const ZG& c);
ZGMatrix lift_matrix(const FiniteAbelianGroup& G, const QuotientGroup& Q, const ZGMatrix& A);

// Index of the character of G inflated from the character chi of G/J.
int inflate_character(const FiniteAbelianGroup& G, const QuotientGroup& Q, int chi);

// Descent data for (C, J, X, X'). X holds lifts in P of a separable subset
// of H^2(C); Xp holds the extra elements of X' \ X_J as lifts in P_J.
struct DescentDatum {
  StrictComplex C;
  std::vector<int> subgroup_gens;
  ZGMatrix X, Xp;
  QuotientGroup quotient;
  StrictComplex CJ;
  int a = 0, a_prime = 0;
};
DescentDatum make_descent_datum(const StrictComplex& C, const std::vector<int>& subgroup_gens,
                                const ZGMatrix& X, const ZGMatrix& Xp);

// Target basis V of P with columns X, lifts of X' \ X_J (sheared into ker
// sigma_X), then a completion corrected by column operations to lie in
// ker sigma_X with image in ker sigma_X'.
// Rows a..a'-1 of V^-1 psi then take values in the ideal generated by I(J).
struct DescentBasis {
  bool ok = false;
  ZGMatrix V, Vinv, psi_adapted;
  ZGMatrix Xp_effective;  // full X' in P_J after the shear: [X_J | x'_eff]
  ZGMatrix sigma_X, sigma_Xp;
  std::string reason;
};
// The retractions sigma_X, sigma_X' are unique. choice 0 lifts X' along
// coset representatives and completes from the identity; choice c > 0 moves
// the lift by a random element of I(J) P and completes from a random basis.
DescentBasis descent_basis(const DescentDatum& D, int choice = 0, unsigned seed = 1);

// Values of Boc_{x'_j} on generators of H^1(C)^J = H^1(C_J), as elements of
// Z[G/J] (x) Q_1 written per coset: entry [gen][coset] lies in Z[J].
struct BocksteinMap {
  int j = 0;  // index of x' among X' \ X_J, 0-based
  std::vector<ZG> row;  // rows a + j of V^-1 psi, values in I_J mod I_J^2
  std::vector<std::vector<ZG>> values;
  bool lift_independent = false;
};
BocksteinMap bockstein(const DescentDatum& D, const DescentBasis& B, int j, unsigned seed = 1);

// Elements of Z[G]^N (x) (Z[J] / I^m): one element of Z[J] per (coordinate, g).
struct JTensor {
  std::size_t N = 0;
  std::vector<ZG> values;  // index t * |G| + g
};

// N_J(eta) = sum_sigma sigma(eta) (x) sigma^-1 for integral eta in Z[G]^N.
JTensor norm_operator(const std::vector<QG>& eta, const QuotientGroup& Q);

// Z[G/J]^N (x) Q_k, per (coordinate, coset), mapped into Z[G]^N (x) Q_k by
// c (x) q -> T_J lift(c) (x) q.
JTensor nu_embedding(const FiniteAbelianGroup& G, const QuotientGroup& Q,
                     const std::vector<std::vector<ZG>>& per_coset);
// Injectivity of nu on Z[G/J]^N (x) Q_k: the image of a generating set has
// the same order (and rank) as the domain modulo I^{k+1}.
bool nu_injective(const FiniteAbelianGroup& G, const QuotientGroup& Q, std::size_t N,
                  const AugmentationQuotient& Qk);

// Writes y in Z[G] as sum_t r_t y_t with y_t in Z[J].
std::vector<ZG> coset_components(const FiniteAbelianGroup& G, const QuotientGroup& Q, const ZG& y);

// N_J(I(J)^k wedge^a P) lies in the image of nu (checked on Z-generators).
bool norm_lands_in_nu_image(const FiniteAbelianGroup& G, const std::vector<int>& subgroup_gens,
                            std::size_t d, int a, int k);

// lambda_J as the base change of lambda along inflation of characters.
LambdaMap descend_lambda(const LambdaMap& lam, const FiniteAbelianGroup& G, const QuotientGroup& Q);

struct MRSChoice {
  int choice = 0;
  bool basis_found = false;
  bool lift_independent = false;
  bool congruence = false;
  JTensor lhs, rhs;  // N_J(eta_X) and (-1)^{a(a'-a)} nu(Boc(eta_X'))
  std::string reason;
};

struct MRSReport {
  int a = 0, a_prime = 0, k = 0;
  bool theta_descends = false;       // (i)
  bool eta_X_integral = false;       // (ii)
  bool eta_Xp_integral = false;
  bool norm_in_Q = false;            // N_J(eta_X) has coefficients in I^k
  std::vector<QG> eta_X, eta_Xp;
  std::vector<MRSChoice> choices;
  bool congruence = false;           // holds for choice 0
  bool choice_independent = false;   // all recorded choices agree
  std::string reason;
  bool ok() const { return theta_descends && eta_X_integral && eta_Xp_integral && norm_in_Q && congruence; }
};
MRSReport check_mrs(const DescentDatum& D, const LambdaMap& lam, const QG& L, int choices = 2);

}  // namespace hse
