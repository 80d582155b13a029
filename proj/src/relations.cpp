#include "rdmom/relations.hpp"

#include "rdmom/exactla.hpp"

#include <algorithm>

namespace rdmom {

bool ColumnRelation::degree_reducing() const {
  return rhs.zero() || rhs.degree() < target.degree();
}

Poly ColumnRelation::relation_poly() const {
  return Poly::term(target, 1) - rhs;
}

std::vector<ColumnRelation> kernel_relations(const MomentMatrix& m) {
  const auto monos = monomials_up_to(m.degree());
  Rref red = rref(m.mat().mat());
  std::vector<bool> is_piv(monos.size(), false);
  for (std::size_t c : red.pivot_cols) is_piv[c] = true;

  std::vector<ColumnRelation> rels;
  for (std::size_t c = 0; c < monos.size(); ++c) {
    if (is_piv[c]) continue;
    ColumnRelation rel;
    rel.target = monos[c];
    // In reduced echelon form a pivot column contributing to column c always
    // precedes it, so the rhs is automatically supported on earlier monomials.
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
      const Rat& v = red.r.at(r, c);
      if (v != 0) rel.rhs.add(monos[red.pivot_cols[r]], v);
    }
    rels.push_back(std::move(rel));
  }
  return rels;
}

RgReport is_recursively_generated(const MomentMatrix& m) {
  const unsigned d = m.degree();
  const auto monos = monomials_up_to(d);
  const auto rels = kernel_relations(m);
  for (const ColumnRelation& rel : rels) {
    const Poly f = rel.relation_poly();
    const unsigned td = rel.target.degree();
    for (unsigned sd = 1; sd + td <= d; ++sd) {
      for (const Monomial& s : monomials_of_degree(sd)) {
        const auto v = f.shifted(s).coeff_vector(monos);
        const auto mv = m.mat().mat().mul_vec(v);
        for (std::size_t i = 0; i < mv.size(); ++i) {
          if (mv[i] != 0) {
            RgReport rep;
            rep.ok = false;
            rep.violation = RgViolation{rel, s, monos[i], mv[i]};
            return rep;
          }
        }
      }
    }
  }
  return {};
}

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Flat: return "flat";
    case Classification::RdExtHypothesis: return "rd_ext_hypothesis";
    case Classification::RdNewHypothesis: return "rd_new_hypothesis";
    case Classification::GeneralRd: return "general_rd";
  }
  return "unknown";
}

Poly DeterminacyProfile::x_poly() const {
  return Poly::term({n, 0}, 1) - p;
}

Poly DeterminacyProfile::y_poly() const {
  return Poly::term({0, m}, 1) - q;
}

std::pair<Poly, Poly> DeterminacyProfile::generators_input_frame() const {
  Poly fx = x_poly(), fy = y_poly();
  if (roles_swapped) return {fx.swapped_vars(), fy.swapped_vars()};
  return {fx, fy};
}

namespace {

// The pure-power pair in the given frame, without classification.
std::optional<DeterminacyProfile> detect_in_frame(const std::vector<ColumnRelation>& rels) {
  const ColumnRelation* best_x = nullptr;
  const ColumnRelation* best_y = nullptr;
  for (const ColumnRelation& rel : rels) {
    if (rel.target.j == 0 && rel.target.i > 0 && (!best_x || rel.target.i < best_x->target.i))
      best_x = &rel;
    if (rel.target.i == 0 && rel.target.j > 0 && (!best_y || rel.target.j < best_y->target.j))
      best_y = &rel;
  }
  if (!best_x || !best_y) return std::nullopt;
  DeterminacyProfile prof;
  prof.n = best_x->target.i;
  prof.p = best_x->rhs;
  prof.m = best_y->target.j;
  prof.q = best_y->rhs;
  return prof;
}

}  // namespace

std::optional<DeterminacyProfile> detect_rd(const MomentMatrix& m) {
  if (auto prof = detect_in_frame(kernel_relations(m))) {
    prof->roles_swapped = false;
    prof->classification = classify(m, *prof);
    return prof;
  }
  const MomentMatrix ms = build_moment_matrix(m.beta().swapped(), m.degree());
  if (auto prof = detect_in_frame(kernel_relations(ms))) {
    prof->roles_swapped = true;
    prof->classification = classify(ms, *prof);
    return prof;
  }
  return std::nullopt;
}

Classification classify(const MomentMatrix& m, const DeterminacyProfile& prof) {
  const unsigned d = m.degree();
  const auto monos = monomials_up_to(d);
  const std::size_t rk = rank(m.mat().mat());

  if (d == 0) return rk == 0 ? Classification::Flat : Classification::GeneralRd;
  const std::size_t prev = basis_size(d - 1);
  if (rank(m.mat().leading(prev).mat()) == rk) return Classification::Flat;

  // Shift both generators through every degree that still fits and collect
  // the resulting coefficient vectors.
  const Poly fx = prof.x_poly(), fy = prof.y_poly();
  std::vector<std::vector<Rat>> gen;
  auto push_shifts = [&](const Poly& f, unsigned base) {
    for (unsigned sd = 0; base + sd <= d; ++sd)
      for (const Monomial& s : monomials_of_degree(sd)) gen.push_back(f.shifted(s).coeff_vector(monos));
  };
  push_shifts(fx, prof.n);
  push_shifts(fy, prof.m);

  bool in_kernel = true;
  for (const auto& g : gen) {
    for (const Rat& v : m.mat().mat().mul_vec(g)) {
      if (v != 0) {
        in_kernel = false;
        break;
      }
    }
    if (!in_kernel) break;
  }

  if (in_kernel) {
    Mat stack(gen.size(), monos.size());
    for (std::size_t r = 0; r < gen.size(); ++r)
      for (std::size_t c = 0; c < monos.size(); ++c) stack.at(r, c) = gen[r][c];
    if (rank(stack) == monos.size() - rk) return Classification::RdExtHypothesis;
  }

  bool all_reducing = true;
  for (const ColumnRelation& rel : kernel_relations(m)) {
    if (!rel.degree_reducing()) {
      all_reducing = false;
      break;
    }
  }
  if (all_reducing && in_kernel) return Classification::RdNewHypothesis;
  return Classification::GeneralRd;
}

}  // namespace rdmom
