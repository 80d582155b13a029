#pragma once

#include "rdmom/matrix.hpp"
#include "rdmom/poly.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

namespace rdmom {

// Moments beta_{i,j} for all i + j <= 2 * half_degree, stored in deglex order.
class MomentSequence {
 public:
  explicit MomentSequence(unsigned half_degree = 0);

  unsigned half_degree() const { return d_; }
  unsigned max_degree() const { return 2 * d_; }
  std::size_t size() const { return v_.size(); }

  const Rat& at(const Monomial& m) const;  // throws std::out_of_range past 2d
  void set(const Monomial& m, const Rat& v);
  bool has(const Monomial& m) const { return m.degree() <= 2 * d_; }

  MomentSequence swapped() const;  // beta_{i,j} -> beta_{j,i}
  MomentSequence scaled(const Rat& c) const;

  bool operator==(const MomentSequence& o) const = default;

 private:
  unsigned d_;
  std::vector<Rat> v_;
};

struct RieszDegreeError : std::domain_error {
  using std::domain_error::domain_error;
};

// The linear functional p = sum c_ij x^i y^j  |->  sum c_ij beta_{i,j}.
// Throws RieszDegreeError when deg p exceeds the stored range.
Rat riesz(const MomentSequence& beta, const Poly& p);

// M_k: rows and columns indexed by the monomials of degree <= k in deglex
// order, entry (u, v) = beta_{u+v}. Keeps a handle on the sequence it came
// from so downstream layers can extend it.
class MomentMatrix {
 public:
  MomentMatrix() = default;
  MomentMatrix(unsigned degree, SymMat mat, std::shared_ptr<const MomentSequence> beta)
      : k_(degree), m_(std::move(mat)), beta_(std::move(beta)) {}

  unsigned degree() const { return k_; }
  std::size_t dim() const { return m_.dim(); }
  const SymMat& mat() const { return m_; }
  const MomentSequence& beta() const { return *beta_; }
  std::shared_ptr<const MomentSequence> beta_ptr() const { return beta_; }

 private:
  unsigned k_ = 0;
  SymMat m_;
  std::shared_ptr<const MomentSequence> beta_;
};

// Requires 2k <= beta.max_degree().
MomentMatrix build_moment_matrix(const MomentSequence& beta, unsigned k);
MomentMatrix build_moment_matrix(std::shared_ptr<const MomentSequence> beta, unsigned k);

// Audit of a raw symmetric matrix laid out like M_k: cells that share a
// moment index must carry one value. Returns every disagreement against the
// first cell (in deglex cell order) of the same index.
struct StructureViolation {
  unsigned block_row = 0, block_col = 0;  // block of the disagreeing cell
  unsigned level = 0;                     // y part of the shared moment index
  Monomial index;                         // the shared moment index itself
  Monomial row_a, col_a;                  // reference cell
  Monomial row_b, col_b;                  // disagreeing cell
  Rat value_a, value_b;
};
std::vector<StructureViolation> validate_structure(const SymMat& m, unsigned k);

struct RatAtom {
  Rat x, y, weight;
};
struct RatMeasure {
  std::vector<RatAtom> atoms;
};

MomentSequence moments_from_atoms(const RatMeasure& mu, unsigned half_degree);

// Product grid: one atom per (x, y) pair, enumerated row major. `weights`
// must have xs.size() * ys.size() entries, or be empty for uniform weight 1.
RatMeasure grid_measure(const std::vector<Rat>& xs, const std::vector<Rat>& ys,
                        const std::vector<Rat>& weights = {});

}  // namespace rdmom
