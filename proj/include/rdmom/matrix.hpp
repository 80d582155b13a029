#pragma once

#include "rdmom/rational.hpp"

#include <cstddef>
#include <vector>

namespace rdmom {

// Dense rational matrix, row major. Sizes in this project stay small (a few
// hundred entries), so no sparsity or pivot-size tricks beyond exactness.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  static Mat identity(std::size_t n);

  Mat transposed() const;
  Mat operator*(const Mat& rhs) const;
  Mat operator-(const Mat& rhs) const;
  bool operator==(const Mat& rhs) const;

  std::vector<Rat> mul_vec(const std::vector<Rat>& v) const;

  bool is_symmetric() const;
  bool is_zero() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> e_;
};

// Symmetric rational matrix; the constructor rejects asymmetric input so the
// PSD routine can rely on the invariant.
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(Mat m);  // throws std::invalid_argument when not symmetric

  std::size_t dim() const { return m_.rows(); }
  const Rat& at(std::size_t i, std::size_t j) const { return m_.at(i, j); }
  const Mat& mat() const { return m_; }

  void set(std::size_t i, std::size_t j, const Rat& v);  // writes (i,j) and (j,i)

  // Top-left k x k principal block.
  SymMat leading(std::size_t k) const;

 private:
  Mat m_;
};

}  // namespace rdmom
