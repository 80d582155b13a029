#include "rdmom/exactla.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rdmom {

PsdReport psd_check(const SymMat& a) {
  const std::size_t n = a.dim();
  Mat w = a.mat();
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::vector<std::size_t> pivots;

  while (!active.empty()) {
    for (std::size_t i : active) {
      if (w.at(i, i) < 0) {
        PsdCertificate cert;
        cert.kind = PsdCertificate::Kind::NegativePivot;
        cert.minor = pivots;
        cert.minor.push_back(i);
        cert.row = cert.col = i;
        return {false, pivots.size(), cert};
      }
    }
    for (std::size_t i : active) {
      if (w.at(i, i) != 0) continue;
      for (std::size_t j : active) {
        if (w.at(i, j) != 0) {
          PsdCertificate cert;
          cert.kind = PsdCertificate::Kind::ZeroDiagonalNonzeroRow;
          cert.minor = pivots;
          cert.minor.push_back(i);
          cert.minor.push_back(j);
          std::sort(cert.minor.begin(), cert.minor.end());
          cert.row = i;
          cert.col = j;
          return {false, pivots.size(), cert};
        }
      }
    }
    // Indices with zero diagonal now have an all-zero active row; drop them.
    std::vector<std::size_t> live;
    for (std::size_t i : active)
      if (w.at(i, i) != 0) live.push_back(i);
    if (live.empty()) break;

    const std::size_t p = live.front();
    pivots.push_back(p);
    const Rat piv = w.at(p, p);
    std::vector<std::size_t> rest(live.begin() + 1, live.end());
    for (std::size_t i : rest) {
      if (w.at(i, p) == 0) continue;
      const Rat f = w.at(i, p) / piv;
      for (std::size_t j : rest) {
        if (w.at(p, j) != 0) w.at(i, j) -= f * w.at(p, j);
      }
    }
    active = std::move(rest);
  }
  return {true, pivots.size(), std::nullopt};
}

std::size_t rank(const Mat& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  if (rows == 0 || cols == 0) return 0;

  // Clear denominators per row, then run Bareiss so every intermediate stays
  // an integer and the exact divisions are cheap.
  std::vector<std::vector<mpz_class>> z(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      mpz_class den = a.at(r, c).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      mpz_class t = l / a.at(r, c).get_den();
      z[r][c] = a.at(r, c).get_num() * t;
    }
  }

  mpz_class prev = 1;
  std::size_t rk = 0;
  for (std::size_t col = 0; col < cols && rk < rows; ++col) {
    std::size_t p = rk;
    while (p < rows && z[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(z[rk], z[p]);
    for (std::size_t r = rk + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        mpz_class t = z[rk][col] * z[r][c] - z[r][col] * z[rk][c];
        mpz_divexact(z[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      z[r][col] = 0;
    }
    prev = z[rk][col];
    ++rk;
  }
  return rk;
}

Rref rref(Mat a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a.at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(p, j));
    }
    const Rat inv = Rat(1) / a.at(r, c);
    for (std::size_t j = c; j < cols; ++j) a.at(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      const Rat f = a.at(i, c);
      for (std::size_t j = c; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(piv)};
}

std::optional<std::vector<Rat>> solve_consistent(const Mat& a, const std::vector<Rat>& b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  if (b.size() != rows) throw std::invalid_argument("solve_consistent: length mismatch");
  Mat aug(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, cols) = b[i];
  }
  Rref red = rref(std::move(aug));
  if (!red.pivot_cols.empty() && red.pivot_cols.back() == cols) return std::nullopt;
  std::vector<Rat> x(cols);
  for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) x[red.pivot_cols[r]] = red.r.at(r, cols);
  return x;
}

SchurReport schur_delta(const SymMat& a, const Mat& b, const SymMat& c) {
  const std::size_t n = a.dim(), k = b.cols();
  if (b.rows() != n || c.dim() != k) throw std::invalid_argument("schur_delta: shape mismatch");
  SchurReport out;
  out.w = Mat(n, k);
  std::vector<Rat> col(n);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b.at(i, j);
    auto x = solve_consistent(a.mat(), col);
    if (!x) {
      out.in_range = false;
      out.bad_column = j;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) out.w.at(i, j) = (*x)[i];
  }
  // W^T B = W^T A W is symmetric whenever B is in range, so this wrap cannot
  // throw on consistent data.
  out.delta = SymMat(c.mat() - out.w.transposed() * b);
  return out;
}

}  // namespace rdmom
