#include "rdmom/moment.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace rdmom {

MomentSequence::MomentSequence(unsigned half_degree)
    : d_(half_degree), v_(basis_size(2 * half_degree)) {}

const Rat& MomentSequence::at(const Monomial& m) const {
  if (!has(m)) throw std::out_of_range("moment index " + to_string(m) + " beyond degree");
  return v_[deglex_index(m)];
}

void MomentSequence::set(const Monomial& m, const Rat& v) {
  if (!has(m)) throw std::out_of_range("moment index " + to_string(m) + " beyond degree");
  v_[deglex_index(m)] = v;
}

MomentSequence MomentSequence::swapped() const {
  MomentSequence out(d_);
  for (const Monomial& m : monomials_up_to(2 * d_)) out.set(m.swapped(), at(m));
  return out;
}

MomentSequence MomentSequence::scaled(const Rat& c) const {
  MomentSequence out(d_);
  for (const Monomial& m : monomials_up_to(2 * d_)) out.set(m, c * at(m));
  return out;
}

Rat riesz(const MomentSequence& beta, const Poly& p) {
  Rat s = 0;
  for (const auto& [m, c] : p) {
    if (!beta.has(m))
      throw RieszDegreeError("riesz: term " + to_string(m) + " exceeds stored moments");
    s += c * beta.at(m);
  }
  return s;
}

MomentMatrix build_moment_matrix(const MomentSequence& beta, unsigned k) {
  return build_moment_matrix(std::make_shared<const MomentSequence>(beta), k);
}

MomentMatrix build_moment_matrix(std::shared_ptr<const MomentSequence> beta, unsigned k) {
  if (2 * k > beta->max_degree())
    throw std::out_of_range("build_moment_matrix: sequence too short for degree");
  const auto monos = monomials_up_to(k);
  Mat m(monos.size(), monos.size());
  for (std::size_t r = 0; r < monos.size(); ++r)
    for (std::size_t c = r; c < monos.size(); ++c) {
      m.at(r, c) = beta->at(monos[r] + monos[c]);
      m.at(c, r) = m.at(r, c);
    }
  return MomentMatrix(k, SymMat(std::move(m)), std::move(beta));
}

std::vector<StructureViolation> validate_structure(const SymMat& m, unsigned k) {
  const auto monos = monomials_up_to(k);
  if (m.dim() != monos.size())
    throw std::invalid_argument("validate_structure: dimension does not match degree");

  std::vector<StructureViolation> out;
  // Walk moment indices in deglex order; the first cell seen for an index is
  // the reference the others must match.
  std::map<Monomial, std::pair<Monomial, Monomial>, DeglexLess> ref;
  for (const Monomial& idx : monomials_up_to(2 * k)) {
    bool have = false;
    std::pair<Monomial, Monomial> first;
    for (const Monomial& r : monos) {
      if (r.i > idx.i || r.j > idx.j) continue;
      const Monomial c{idx.i - r.i, idx.j - r.j};
      if (c.degree() > k) continue;
      if (!have) {
        first = {r, c};
        have = true;
        continue;
      }
      const Rat& a = m.at(deglex_index(first.first), deglex_index(first.second));
      const Rat& b = m.at(deglex_index(r), deglex_index(c));
      if (a != b) {
        StructureViolation v;
        v.block_row = r.degree();
        v.block_col = c.degree();
        v.level = idx.j;
        v.index = idx;
        v.row_a = first.first;
        v.col_a = first.second;
        v.row_b = r;
        v.col_b = c;
        v.value_a = a;
        v.value_b = b;
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

MomentSequence moments_from_atoms(const RatMeasure& mu, unsigned half_degree) {
  MomentSequence out(half_degree);
  for (const Monomial& m : monomials_up_to(2 * half_degree)) {
    Rat s = 0;
    for (const RatAtom& a : mu.atoms) {
      Rat t = a.weight;
      for (unsigned e = 0; e < m.i; ++e) t *= a.x;
      for (unsigned e = 0; e < m.j; ++e) t *= a.y;
      s += t;
    }
    out.set(m, s);
  }
  return out;
}

RatMeasure grid_measure(const std::vector<Rat>& xs, const std::vector<Rat>& ys,
                        const std::vector<Rat>& weights) {
  if (!weights.empty() && weights.size() != xs.size() * ys.size())
    throw std::invalid_argument("grid_measure: weight count must match grid size");
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) throw std::invalid_argument("grid_measure: duplicate x node");
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = i + 1; j < ys.size(); ++j)
      if (ys[i] == ys[j]) throw std::invalid_argument("grid_measure: duplicate y node");
  RatMeasure mu;
  std::size_t k = 0;
  for (const Rat& x : xs)
    for (const Rat& y : ys) {
      mu.atoms.push_back({x, y, weights.empty() ? Rat(1) : weights[k]});
      ++k;
    }
  return mu;
}

}  // namespace rdmom
