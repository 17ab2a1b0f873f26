#pragma once

// Brute-force recomputation of derived quantities on small instances, and the
// seeded instance generator. The brute-force routines use their own group
// law, group-ring product, determinants, Hermite forms and linear solver;
// only scalar types (mpz/mpq, Cyc) are shared with the main library.

#include <optional>
#include <string>
#include <vector>

#include "hse/special.hpp"

namespace hse::oracle {

// A Z-lattice in Q^n in canonical form: den * L is integral with minimal
// den > 0, and `rows` is the Hermite normal form of den * L.
struct OracleLattice {
  std::size_t n = 0;
  mpz_class den = 1;
  std::vector<std::vector<mpz_class>> rows;

  static OracleLattice from_rows(std::size_t n, const std::vector<std::vector<mpq_class>>& rows);
  // Re-canonicalizes the raw basis data of a main-path lattice.
  static OracleLattice from_main(const ZLattice& L);
  std::size_t rank() const { return rows.size(); }
  // Least e > 0 with e * this contained in sub; nullopt if no such e.
  std::optional<mpz_class> exponent_over(const OracleLattice& sub) const;
  bool operator==(const OracleLattice& o) const = default;
};

// --- instance generation -----------------------------------------------------

enum class Shape { strict, three_term };
enum class XKind { none, separable, arbitrary };

struct InstanceSpec {
  unsigned seed = 1;
  std::vector<int> group;
  std::size_t d = 2;
  int bound = 1;  // coefficient bound of random entries
  // H^2 rank at each character (strict shape); random when empty.
  std::vector<int> rank_vector;
  Shape shape = Shape::strict;
  XKind x_kind = XKind::none;
  std::size_t a = 0;
  std::size_t s1 = 1, s3 = 1;  // three-term shape: d1 is (s1+s3) x s1
};

struct Instance {
  FiniteAbelianGroup G;
  Shape shape = Shape::strict;
  std::optional<StrictComplex> strict;
  std::optional<ThreeTermComplex> three;
  std::optional<ZGMatrix> X;
  std::optional<LambdaMap> lambda;
  std::vector<int> rank_vector;
};

Instance random_instance(const InstanceSpec& spec);

// --- oracles -------------------------------------------------------------------

// Fit^a from a re-presentation (an extra redundant generator, relations
// mixed by random integer row operations, one redundant relation), by
// enumerating every minor. Requires at most 5 generators.
OracleLattice brute_force_fitting(const PresentedModule& M, int a, unsigned seed = 1);

// The a-th exterior power of an embedded lattice M, as the Z-span of the
// wedges of its Z-basis, flattened in the subset model.
OracleLattice wedge_lattice(const GLattice& M, int a);

// Points of (1/D) wedge^a M on which every wedge of transported dual-basis
// functionals is integral, found by exhaustive enumeration of a fundamental
// box. Requires Z-rank <= 6, a <= 2 and at most `max_points` box points.
OracleLattice brute_force_bidual(const GLattice& M, int a, const mpz_class& D,
                                 std::size_t max_points = 2000000);

// A pairing left x right -> Q/Z of finite abelian groups given by its values
// on the cyclic generators is perfect, checked by enumerating both groups.
bool pairing_oracle(const std::vector<mpz_class>& left, const std::vector<mpz_class>& right,
                    const std::vector<std::vector<mpq_class>>& values,
                    std::size_t max_elements = 10000);

// Character coordinates define an element of Z[G]: inverse transform and
// check every group-basis coefficient.
bool integrality_oracle(const std::vector<int>& group, const std::vector<Cyc>& coords);

}  // namespace hse::oracle
