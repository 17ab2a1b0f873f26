#pragma once

#include <memory>
#include <string>
#include <vector>

namespace hse {

// Finite abelian group Z/n1 x ... x Z/nk in invariant-factor form
// (n1 | n2 | ... | nk, every ni >= 2). Elements are residue tuples indexed in
// mixed-radix order with the last factor varying fastest, so the identity has
// index 0. Characters are indexed the same way: the tuple c names
// chi_c(r) = zeta_e^(sum c_i r_i e/n_i) with e the exponent.
//
// Copies share the multiplication table.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup();  // trivial group
  explicit FiniteAbelianGroup(std::vector<int> invariant_factors);

  const std::vector<int>& factors() const;
  int order() const;
  int exponent() const;
  int rank() const { return static_cast<int>(factors().size()); }

  std::vector<int> element(int index) const;
  int index(const std::vector<int>& residues) const;  // reduces mod n_i
  int mul(int g, int h) const;
  int inv(int g) const;
  int identity() const { return 0; }
  int generator(int i) const;
  int pow(int g, long k) const;
  int element_order(int g) const;

  // Exponent k with chi(g) = zeta_e^k, 0 <= k < e.
  int char_exponent(int chi, int g) const;
  // Index of the character chi^a (a may be negative).
  int char_pow(int chi, long a) const;
  bool char_trivial_on(int chi, const std::vector<int>& elements) const;

  bool operator==(const FiniteAbelianGroup& o) const;
  bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> p_;
};

// Normalizes arbitrary cyclic factors (e.g. {6, 4}) to invariant form
// ({2, 12}); factors equal to 1 are dropped.
std::vector<int> invariant_factors(const std::vector<long>& cyclic_orders);

// G/J for the subgroup J generated by `gens`, realized in invariant-factor
// form together with the projection G -> G/J on element indices.
struct QuotientGroup {
  FiniteAbelianGroup quotient;
  std::vector<int> projection;      // size |G|
  std::vector<int> subgroup;        // elements of J, sorted
  std::vector<int> coset_reps;      // one lift per element of G/J, by index
};

QuotientGroup quotient_group(const FiniteAbelianGroup& G,
                             const std::vector<int>& gens);

// Closure of `gens` under multiplication, sorted.
std::vector<int> generated_subgroup(const FiniteAbelianGroup& G,
                                    const std::vector<int>& gens);

}  // namespace hse
