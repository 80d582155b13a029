#pragma once

#include "rdmom/moment.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace rdmom {

// A column dependency of a moment matrix in reduced form: the target column
// equals the rhs combination of independent columns that precede it in deglex
// order.
struct ColumnRelation {
  Monomial target;
  Poly rhs;

  bool degree_reducing() const;  // deg rhs < deg target (zero rhs counts as reducing)
  Poly relation_poly() const;    // target - rhs
};

// One relation per dependent column, from the reduced echelon form of M.
// Deterministic: relations appear in deglex order of their targets.
std::vector<ColumnRelation> kernel_relations(const MomentMatrix& m);

struct RgViolation {
  ColumnRelation relation;
  Monomial multiplier;
  Monomial row;
  Rat residual;
};
struct RgReport {
  bool ok = true;
  std::optional<RgViolation> violation;  // first one in scan order
};

// Recursive generation: each kernel relation, multiplied by any monomial that
// keeps the product inside degree k, must again vanish against the matrix.
RgReport is_recursively_generated(const MomentMatrix& m);

enum class Classification {
  Flat,             // rank M_k == rank M_{k-1}
  RdExtHypothesis,  // shifted relation pair spans the whole kernel
  RdNewHypothesis,  // all relations degree reducing, pair families in kernel
  GeneralRd,        // determinate pair present, neither hypothesis holds
};
const char* classification_name(Classification c);

// A recursively determinate relation pair: X^n = p(X,Y) with deg p <= n-1 and
// Y^m = q(X,Y) with deg q <= m and no y^m term. When roles_swapped is set the
// pair was found after exchanging x and y, and p/q live in that exchanged
// (working) frame.
struct DeterminacyProfile {
  unsigned n = 0;
  Poly p;
  unsigned m = 0;
  Poly q;
  bool roles_swapped = false;
  Classification classification = Classification::GeneralRd;

  Poly x_poly() const;  // x^n - p, working frame
  Poly y_poly() const;  // y^m - q, working frame
  // Both generators rewritten for the original variable order.
  std::pair<Poly, Poly> generators_input_frame() const;
};

// Minimal pure-power targets X^n and Y^m among the kernel relations; the
// stated variable order is tried first, then the swapped one. nullopt when
// neither orientation yields the pair.
std::optional<DeterminacyProfile> detect_rd(const MomentMatrix& m);

// m and prof must be in the same frame.
Classification classify(const MomentMatrix& m, const DeterminacyProfile& prof);

}  // namespace rdmom
