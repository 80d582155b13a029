#pragma once

#include "rdmom/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace rdmom {

// Witness that a symmetric matrix is not positive semidefinite. For
// NegativePivot the principal submatrix on `minor` (the pivots used so far
// plus the offending index) has negative determinant. For
// ZeroDiagonalNonzeroRow, entry (row,col) is nonzero while (row,row) is zero,
// which forces a negative 2x2 principal minor.
struct PsdCertificate {
  enum class Kind { NegativePivot, ZeroDiagonalNonzeroRow };
  Kind kind = Kind::NegativePivot;
  std::vector<std::size_t> minor;
  std::size_t row = 0;
  std::size_t col = 0;
};

struct PsdReport {
  bool psd = false;
  std::size_t rank = 0;  // meaningful only when psd
  std::optional<PsdCertificate> certificate;
};

// Pivoted exact Schur elimination; no square roots, no floats. Pivots are
// taken first-positive in index order, so results are deterministic.
PsdReport psd_check(const SymMat& a);

// Fraction-free (Bareiss) elimination after clearing row denominators.
std::size_t rank(const Mat& a);

struct Rref {
  Mat r;
  std::vector<std::size_t> pivot_cols;
};
Rref rref(Mat a);

// One solution of A x = b with every free variable set to zero, so x is
// supported on the pivot columns of A. nullopt when b is outside range(A).
std::optional<std::vector<Rat>> solve_consistent(const Mat& a, const std::vector<Rat>& b);

struct SchurReport {
  bool in_range = true;
  std::size_t bad_column = 0;  // first column of b outside range(a), when !in_range
  Mat w;                       // some W with A W = B
  SymMat delta;                // C - W^T B; independent of which W was found
};
SchurReport schur_delta(const SymMat& a, const Mat& b, const SymMat& c);

}  // namespace rdmom
