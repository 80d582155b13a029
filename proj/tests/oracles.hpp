#pragma once

// Test-side oracles, independent of the library's elimination routines:
// determinants by cofactor-free Gaussian elimination over exact rationals,
// positive semidefiniteness by enumerating every principal minor, rank by
// enumerating square minors. Usable up to dimension ~7.

#include "rdmom/matrix.hpp"
#include "rdmom/moment.hpp"
#include "rdmom/poly.hpp"

#include <cassert>
#include <random>
#include <vector>

namespace testutil {

using rdmom::Mat;
using rdmom::Rat;
using rdmom::SymMat;

inline Rat det_oracle(Mat a) {
  assert(a.rows() == a.cols());
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a.at(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
      det = -det;
    }
    det *= a.at(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a.at(r, c) == 0) continue;
      const Rat f = a.at(r, c) / a.at(c, c);
      for (std::size_t j = c; j < n; ++j) a.at(r, j) -= f * a.at(c, j);
    }
  }
  return det;
}

inline Mat submatrix(const Mat& a, const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols) {
  Mat s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s.at(i, j) = a.at(rows[i], cols[j]);
  return s;
}

// PSD iff every principal minor is nonnegative.
inline bool psd_oracle(const SymMat& s) {
  const std::size_t n = s.dim();
  assert(n <= 16);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    if (det_oracle(submatrix(s.mat(), idx, idx)) < 0) return false;
  }
  return true;
}

inline void subsets_of_size(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur(k);
  // iterative combination walk
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  if (k == 0 || k > n) return;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (cur[i] != i + n - k) break;
      if (i == 0) return;
    }
    ++cur[i];
    for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

// Largest k with a nonvanishing k x k minor.
inline std::size_t rank_oracle(const Mat& a) {
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t k = n; k >= 1; --k) {
    std::vector<std::vector<std::size_t>> rsets, csets;
    subsets_of_size(a.rows(), k, rsets);
    subsets_of_size(a.cols(), k, csets);
    for (const auto& rs : rsets)
      for (const auto& cs : csets)
        if (det_oracle(submatrix(a, rs, cs)) != 0) return k;
  }
  return 0;
}

inline Rat rand_rat(std::mt19937_64& g, int lo = -9, int hi = 9, int den_max = 9) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, den_max);
  Rat r(num(g), den(g));
  r.canonicalize();
  return r;
}

// Uniform over [-bound, bound] with denominator 1..3.
inline Rat rand_coord(std::mt19937_64& g, int bound = 3) {
  std::uniform_int_distribution<int> den(1, 3);
  const int d = den(g);
  std::uniform_int_distribution<int> num(-bound * d, bound * d);
  Rat r(num(g), d);
  r.canonicalize();
  return r;
}

inline SymMat rand_sym(std::mt19937_64& g, std::size_t n) {
  Mat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Rat v = rand_rat(g);
      a.at(i, j) = v;
      a.at(j, i) = v;
    }
  return SymMat(std::move(a));
}

// Gram matrix G^T G of a random k x n factor, PSD with rank <= min(k, n).
inline SymMat rand_psd(std::mt19937_64& g, std::size_t n, std::size_t k) {
  Mat f(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) f.at(i, j) = rand_rat(g, -4, 4, 3);
  return SymMat(f.transposed() * f);
}

inline rdmom::RatMeasure rand_measure(std::mt19937_64& g, std::size_t max_atoms = 8) {
  std::uniform_int_distribution<std::size_t> cnt(1, max_atoms);
  std::uniform_int_distribution<int> wnum(1, 8), wden(1, 4);
  rdmom::RatMeasure mu;
  const std::size_t n = cnt(g);
  for (std::size_t t = 0; t < n; ++t) {
    Rat w(wnum(g), wden(g));
    w.canonicalize();
    mu.atoms.push_back({rand_coord(g), rand_coord(g), w});
  }
  return mu;
}

inline rdmom::Poly make_poly(
    std::initializer_list<std::tuple<unsigned, unsigned, Rat>> terms) {
  rdmom::Poly p;
  for (const auto& [i, j, c] : terms) p.add({i, j}, c);
  return p;
}

}  // namespace testutil
