#pragma once

// Instance files: a JSON document with a fixed layout.
//
//   {
//     "group": [2, 2],                      invariant factors (may be [])
//     "complex": {"shape": "strict", "psi": MATRIX}
//              | {"shape": "three_term", "d0": MATRIX?, "d1": MATRIX, "d2": MATRIX},
//     "lambda": {"conductor": e, "blocks": [BLOCK, ...]}       optional
//     "X": [VECTOR, ...]                    optional, lifts in P (each length d)
//     "Xprime": [VECTOR, ...]               optional, lifts in P of X' \ X_J
//     "subgroup": [[r1, r2], ...]           optional generators of J
//     "x_element": ELEMENT                  optional
//     "metadata": {"seed": n, "description": "..."}   optional
//   }
//
// MATRIX is a list of rows, VECTOR a list of ELEMENTs, and an ELEMENT of
// Z[G] is an object from residue keys "[r1,r2]" to integers, e.g.
// {"[0]": 1, "[1]": -1} for 1 - g over Z/2 (zero coefficients omitted; "[]"
// is the identity of the trivial group). Integers may be written as JSON
// numbers or decimal strings. BLOCK (one per character, in index order) is
// an r x r list of field entries; an entry is a rational string "p/q" or a
// list of rational strings giving coefficients of 1, z, z^2, ... with
// z = exp(2 pi i / e).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hse/descent.hpp"

namespace hse {

class InstanceError : public std::runtime_error {
 public:
  InstanceError(std::string code, const std::string& message, int line = 0, int column = 0);
  const std::string& code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string code_;
  int line_, column_;
};

struct InstanceFile {
  std::vector<int> group;
  FiniteAbelianGroup G;
  bool strict = true;
  StrictComplex C;          // when strict
  ThreeTermComplex three;   // when not strict
  std::optional<LambdaMap> lambda;
  std::optional<ZGMatrix> X, Xprime;
  std::optional<std::vector<std::vector<int>>> subgroup;
  std::optional<ZG> x_element;
  std::optional<unsigned long> seed;
  std::string description;

  std::size_t d() const { return strict ? C.d() : three.s2; }
  std::vector<CharacterSpaces> spaces() const;
  std::vector<int> subgroup_indices() const;
};

// Error codes: E_SYNTAX (with line and column), E_FIELD, E_GROUP, E_ELEMENT,
// E_NUMBER, E_MATRIX_SHAPE, E_COMPLEX, E_LAMBDA_SHAPE, E_LAMBDA_FIELD,
// E_X_RANGE, E_SUBGROUP.
InstanceFile parse_instance(const std::string& text);
std::string serialize_instance(const InstanceFile& f);

}  // namespace hse
