#include "rdmom/monomial.hpp"

namespace rdmom {

bool deglex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.j < b.j;
}

std::size_t deglex_index(const Monomial& m) {
  const std::size_t k = m.degree();
  return k * (k + 1) / 2 + m.j;
}

std::vector<Monomial> monomials_up_to(unsigned d) {
  std::vector<Monomial> out;
  out.reserve(basis_size(d));
  for (unsigned k = 0; k <= d; ++k)
    for (unsigned j = 0; j <= k; ++j) out.push_back({k - j, j});
  return out;
}

std::vector<Monomial> monomials_of_degree(unsigned d) {
  std::vector<Monomial> out;
  out.reserve(d + 1);
  for (unsigned j = 0; j <= d; ++j) out.push_back({d - j, j});
  return out;
}

std::vector<std::pair<Monomial, Monomial>> cross_diagonal(unsigned block_row,
                                                          unsigned block_col,
                                                          unsigned level) {
  std::vector<std::pair<Monomial, Monomial>> out;
  for (unsigned rj = 0; rj <= block_row; ++rj) {
    if (level < rj) continue;
    const unsigned cj = level - rj;
    if (cj > block_col) continue;
    out.push_back({Monomial{block_row - rj, rj}, Monomial{block_col - cj, cj}});
  }
  return out;
}

std::string to_string(const Monomial& m) {
  if (m.i == 0 && m.j == 0) return "1";
  std::string s;
  auto var = [&](char v, unsigned e) {
    if (e == 0) return;
    if (!s.empty()) s += ' ';
    s += v;
    if (e > 1) s += '^' + std::to_string(e);
  };
  var('x', m.i);
  var('y', m.j);
  return s;
}

}  // namespace rdmom
