#include "rdmom/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace rdmom {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat Mat::operator*(const Mat& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("Mat multiply: shape mismatch");
  Mat out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t t = 0; t < cols_; ++t) {
      const Rat& a = at(i, t);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(t, j);
    }
  }
  return out;
}

Mat Mat::operator-(const Mat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("Mat subtract: shape mismatch");
  Mat out(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k] - rhs.e_[k];
  return out;
}

bool Mat::operator==(const Mat& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && e_ == rhs.e_;
}

std::vector<Rat> Mat::mul_vec(const std::vector<Rat>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("Mat mul_vec: length mismatch");
  std::vector<Rat> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j) != 0 && v[j] != 0) s += at(i, j) * v[j];
    }
    out[i] = s;
  }
  return out;
}

bool Mat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const Rat& v : e_)
    if (v != 0) return false;
  return true;
}

SymMat::SymMat(Mat m) : m_(std::move(m)) {
  if (!m_.is_symmetric()) throw std::invalid_argument("SymMat: matrix is not symmetric");
}

void SymMat::set(std::size_t i, std::size_t j, const Rat& v) {
  m_.at(i, j) = v;
  m_.at(j, i) = v;
}

SymMat SymMat::leading(std::size_t k) const {
  Mat out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.at(i, j) = m_.at(i, j);
  return SymMat(std::move(out));
}

}  // namespace rdmom
