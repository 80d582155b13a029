#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace rdmom {

struct Monomial {
  unsigned i = 0;  // x exponent
  unsigned j = 0;  // y exponent

  unsigned degree() const { return i + j; }
  Monomial operator+(const Monomial& o) const { return {i + o.i, j + o.j}; }
  Monomial swapped() const { return {j, i}; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded order: total degree first, then y exponent ascending, so each degree
// block runs x^k, x^{k-1} y, ..., y^k.
bool deglex_less(const Monomial& a, const Monomial& b);

struct DeglexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return deglex_less(a, b); }
};

// Position of m in the enumeration 1, x, y, x^2, x y, y^2, ...
std::size_t deglex_index(const Monomial& m);

std::vector<Monomial> monomials_up_to(unsigned d);
std::vector<Monomial> monomials_of_degree(unsigned d);

// Number of bivariate monomials of degree <= d.
constexpr std::size_t basis_size(unsigned d) {
  return std::size_t(d + 1) * (d + 2) / 2;
}

// Cell positions (row, col) inside the block with row degree block_row and
// column degree block_col that share one moment index; `level` is the y part
// of that index. Valid levels are 0 .. block_row + block_col.
std::vector<std::pair<Monomial, Monomial>> cross_diagonal(unsigned block_row,
                                                          unsigned block_col,
                                                          unsigned level);

constexpr unsigned cross_diagonal_levels(unsigned block_row, unsigned block_col) {
  return block_row + block_col + 1;
}

std::string to_string(const Monomial& m);  // "1", "x", "x^2 y", ...

}  // namespace rdmom
