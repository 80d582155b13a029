#pragma once

#include "rdmom/extend.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rdmom {

struct NotFlatError : std::logic_error {
  using std::logic_error::logic_error;
};

// Multiplication by x and by y compressed onto the column basis of a flat
// moment matrix. The basis rows are the independent columns of the one-lower
// degree block, so both operators act on R^rank.
struct MultOperators {
  std::vector<Monomial> basis;
  Eigen::MatrixXd mx, my;
};

// Throws NotFlatError when rank M_k != rank M_{k-1}. The coefficient solves
// are exact; only the final entries are floats.
MultOperators multiplication_matrices(const MomentMatrix& flat);

struct AtomExtraction {
  bool ok = false;
  std::string error;  // "spectrum_unresolved" after every shift fails
  std::vector<std::pair<double, double>> points;
  double shift_used = 0;  // s for which mx + s * my had a simple spectrum
  int attempts = 0;
};

// Joint eigenvalues via a generic shear mx + s * my; s walks a fixed list of
// irrational constants so reruns are bit-identical. Coordinates come from
// Rayleigh quotients of the shared eigenvectors.
AtomExtraction extract_atoms(const MultOperators& ops);

struct DensitySolve {
  std::vector<double> weights;
  std::vector<double> residuals;  // one per moment, deglex order
  double residual_max = 0;
};

// Least-squares weights against every stored moment of beta.
DensitySolve solve_densities(const std::vector<std::pair<double, double>>& points,
                             const MomentSequence& beta);

struct Atom {
  double x = 0, y = 0, weight = 0;
};

struct MeasureReport {
  bool ok = false;
  std::string error;  // stage name when !ok
  std::vector<Atom> atoms;  // sorted by (x, y)
  double residual_max = 0;
  double tol_abs = 0;  // rel_tol * max(1, max |beta|)
  std::size_t flat_rank = 0;
  bool weights_positive = false;
  bool atoms_on_generators = false;
  bool moments_match = false;
  bool count_matches = false;
};

// Recovery pipeline from a flat matrix, verified against `beta` (normally the
// original input sequence). rel_tol is relative to max |beta|.
MeasureReport recover_measure(const MomentMatrix& flat, const MomentSequence& beta,
                              const DeterminacyProfile& prof, double rel_tol = 1e-9);

// Number of common real zeros of the two generators, found numerically from
// an exact elimination resultant. nullopt when the resultant degree exceeds
// 12 or the resultant vanishes identically.
std::optional<std::size_t> variety_count(const DeterminacyProfile& prof);

}  // namespace rdmom
