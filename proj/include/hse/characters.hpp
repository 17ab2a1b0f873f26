#pragma once

#include <optional>
#include <vector>

#include "hse/group_ring.hpp"

namespace hse {

// Value chi(g) as an element of Q(zeta_e).
Cyc char_value(const FiniteAbelianGroup& G, int chi, int g);

// Character coordinates (chi(x))_chi with characters in element-index order.
std::vector<Cyc> char_coords(const ZG& x);
std::vector<Cyc> char_coords(const QG& x);
std::vector<Cyc> char_coords(const KG& x);

// Inverse transform x_g = |G|^-1 sum_chi chi(g^-1) v_chi.
KG from_char_coords(const FiniteAbelianGroup& G, const std::vector<Cyc>& v);
// Same, when the result has rational coefficients; nullopt otherwise.
std::optional<QG> rational_from_char_coords(const FiniteAbelianGroup& G,
                                            const std::vector<Cyc>& v);
// True iff v are the character coordinates of an element of Z[G].
bool integrality_test(const FiniteAbelianGroup& G, const std::vector<Cyc>& v);

std::vector<int> galois_orbit(const FiniteAbelianGroup& G, int chi);
bool galois_stable(const FiniteAbelianGroup& G, const std::vector<bool>& support);

// The idempotent sum_{chi in S} e_chi for a Galois-stable support S, with the
// least N such that N * e lies in Z[G].
struct Idempotent {
  QG e;
  std::vector<bool> support;
  mpz_class N = 1;
};
Idempotent idempotent(const FiniteAbelianGroup& G, const std::vector<bool>& support);

// Support {chi : value(chi) == a} and {chi : value(chi) >= a}.
std::vector<bool> support_equal(const std::vector<int>& values, int a);
std::vector<bool> support_at_least(const std::vector<int>& values, int a);

}  // namespace hse
