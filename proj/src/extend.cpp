#include "rdmom/extend.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rdmom {
namespace extend {

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Extended: return "extended";
    case StepKind::BInconsistent: return "b_inconsistent";
    case StepKind::CInconsistent: return "c_inconsistent";
    case StepKind::RangeFailure: return "range_failure";
    case StepKind::NotPsd: return "not_psd";
    case StepKind::NotRecursivelyGenerated: return "not_recursively_generated";
    case StepKind::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::MeasureExists: return "measure_exists";
    case Verdict::NoMeasure: return "no_measure";
    case Verdict::BoundExhausted: return "bound_exhausted";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

namespace {

// Shared state of one band construction. Cells live on rows x new-columns;
// every column of degree d+1 is addressed by its y exponent.
struct BuildCtx {
  unsigned d = 0, n = 0, m = 0;
  const Poly* p = nullptr;
  const Poly* q = nullptr;
  const std::vector<Monomial>* rows = nullptr;
  unsigned top = 0;  // max row degree: d for the B block, d+1 for C

  std::map<Monomial, std::size_t, DeglexLess> rowpos;
  std::size_t ncols = 0;
  std::vector<int> filled;
  std::vector<Rat> val;
  std::vector<const char*> rule;
  std::optional<CellConflict> conflict;

  void init() {
    ncols = d + 2;
    for (std::size_t k = 0; k < rows->size(); ++k) rowpos.emplace((*rows)[k], k);
    filled.assign(rows->size() * ncols, 0);
    val.assign(rows->size() * ncols, Rat(0));
    rule.assign(rows->size() * ncols, nullptr);
  }

  std::size_t idx(const Monomial& r, const Monomial& c) const {
    return rowpos.at(r) * ncols + c.j;
  }
  bool has(const Monomial& r, const Monomial& c) const { return filled[idx(r, c)] != 0; }
  const Rat& value(const Monomial& r, const Monomial& c) const { return val[idx(r, c)]; }
  const char* rule_of(const Monomial& r, const Monomial& c) const { return rule[idx(r, c)]; }

  // Records a value; a repeated definition must agree or the whole
  // construction is inconsistent.
  bool define(const Monomial& r, const Monomial& c, const Rat& v, const char* why) {
    const std::size_t k = idx(r, c);
    if (filled[k]) {
      if (val[k] != v) {
        conflict = CellConflict{r, c, val[k], v, rule[k], why};
        return false;
      }
      return true;
    }
    filled[k] = 1;
    val[k] = v;
    rule[k] = why;
    return true;
  }
};

// The band construction itself. `old_entry(r, c)` reads the already-known
// value of <column c, row r> for columns of degree <= d; `col_from_poly`
// produces a whole new column from a degree <= d polynomial. Rows of degree
// below d (present only in the B block) are seeded from old moments first.
bool run_band(BuildCtx& ctx,
              const std::function<Rat(const Monomial&, const Monomial&)>& old_entry,
              const std::function<std::vector<Rat>(const Poly&)>& col_from_poly,
              bool with_old_rows) {
  const int D1 = int(ctx.d) + 1;
  const int n = int(ctx.n), m = int(ctx.m), top = int(ctx.top);
  const auto& rows = *ctx.rows;
  const auto new_cols = monomials_of_degree(ctx.d + 1);

  if (with_old_rows) {
    for (const Monomial& r : rows) {
      if (int(r.degree()) + 1 > int(ctx.d)) continue;
      for (const Monomial& c : new_cols)
        if (!ctx.define(r, c, old_entry(r, c), "prior moment")) return false;
    }
  }

  // Left band: columns with x exponent >= n come from shifts of the
  // x-relation, evaluated against the old columns. Outer shifts first.
  for (int f = D1 - n; f >= 0; --f) {
    const Monomial cm{unsigned(n + f), unsigned(D1 - n - f)};
    const std::vector<Rat> vec = col_from_poly(ctx.p->shifted({unsigned(f), unsigned(D1 - n - f)}));
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!ctx.define(rows[i], cm, vec[i], "left band (shifted x-relation)")) return false;
  }

  // Central columns inherit along cross diagonals from the innermost
  // left-band column, moving up and to the right.
  const Monomial edge{unsigned(n), unsigned(D1 - n)};
  for (int i = n - 1; i > D1 - m; --i) {
    const Monomial cm{unsigned(i), unsigned(D1 - i)};
    for (int a = 0; a <= top; ++a) {
      const int u = a + i;
      if (u < n || u - n > top) continue;
      const Monomial src{unsigned(u - n), unsigned(top - (u - n))};
      if (!ctx.has(src, edge)) continue;
      if (!ctx.define({unsigned(a), unsigned(top - a)}, cm, ctx.value(src, edge),
                      "cross-diagonal from left band"))
        return false;
    }
  }

  // Pivot column (x exponent D1-m) from the y-relation, rows top down; each
  // fresh value is pushed down-left along its cross diagonal.
  const Monomial colq{unsigned(D1 - m), unsigned(m)};
  for (int k = 0; k <= top; ++k) {
    const Monomial r{unsigned(top - k), unsigned(k)};
    Rat v = 0;
    for (const auto& [t, c] : *ctx.q) {
      const Monomial ref{t.i + unsigned(D1 - m), t.j};
      if (int(t.degree()) <= m - 1) {
        v += c * old_entry(r, ref);
      } else {
        if (!ctx.has(r, ref))
          throw std::logic_error("band construction referenced an undefined cell");
        v += c * ctx.value(r, ref);
      }
    }
    if (!ctx.define(r, colq, v, "recursive pivot column (y-relation)")) return false;
    const int ustar = (top - k) + (D1 - m);
    for (int i = D1 - m + 1; i < n; ++i) {
      const int a = ustar - i;
      if (a < 0 || a > top) continue;
      if (!ctx.define({unsigned(a), unsigned(top - a)}, {unsigned(i), unsigned(D1 - i)}, v,
                      "cross-diagonal from pivot column"))
        return false;
    }
  }

  // Right band: columns with x exponent < D1-m from shifts of the
  // y-relation; references point at columns defined earlier.
  for (int g = 1; g <= D1 - m; ++g) {
    const Monomial cm{unsigned(D1 - m - g), unsigned(m + g)};
    for (const Monomial& r : rows) {
      Rat v = 0;
      for (const auto& [t, c] : *ctx.q) {
        const Monomial ref{t.i + unsigned(D1 - m - g), t.j + unsigned(g)};
        if (int(t.degree()) <= m - 1) {
          v += c * old_entry(r, ref);
        } else {
          if (!ctx.has(r, ref))
            throw std::logic_error("band construction referenced an undefined cell");
          v += c * ctx.value(r, ref);
        }
      }
      if (!ctx.define(r, cm, v, "right band (shifted y-relation)")) return false;
    }
  }
  return true;
}

// All cells sharing one moment index must agree (and must match the stored
// moments where those still apply). First offender in deglex index order.
std::optional<CellConflict> hankel_sweep(const BuildCtx& ctx, const MomentSequence* beta) {
  const auto new_cols = monomials_of_degree(ctx.d + 1);
  std::map<Monomial, std::vector<std::pair<Monomial, Monomial>>, DeglexLess> groups;
  for (const Monomial& r : *ctx.rows)
    for (const Monomial& c : new_cols) groups[r + c].push_back({r, c});
  for (const auto& [index, cells] : groups) {
    const bool from_beta = beta != nullptr && index.degree() <= beta->max_degree();
    const Rat base =
        from_beta ? beta->at(index) : ctx.value(cells.front().first, cells.front().second);
    const char* base_rule =
        from_beta ? "prior moment" : ctx.rule_of(cells.front().first, cells.front().second);
    for (const auto& [r, c] : cells) {
      if (ctx.value(r, c) != base)
        return CellConflict{r, c, base, ctx.value(r, c), base_rule, ctx.rule_of(r, c)};
    }
  }
  return std::nullopt;
}

// Every kernel relation of M_d, multiplied up to degree d+1, must annihilate
// the extended columns as well.
std::optional<CellConflict> rg_sweep(const BuildCtx& ctx, const MomentMatrix& m,
                                     const std::vector<ColumnRelation>& rels) {
  const unsigned d = ctx.d;
  for (const ColumnRelation& rel : rels) {
    const Poly f = rel.relation_poly();
    const unsigned td = rel.target.degree();
    if (td + 1 > d + 1) continue;
    const unsigned sd = d + 1 - td;
    for (const Monomial& s : monomials_of_degree(sd)) {
      const Poly sf = f.shifted(s);
      const Monomial starget = rel.target + s;
      for (const Monomial& r : *ctx.rows) {
        Rat resid = 0;
        for (const auto& [t, c] : sf) {
          if (t.degree() <= d) {
            resid += c * m.beta().at(r + t);
          } else {
            resid += c * ctx.value(r, t);
          }
        }
        if (resid != 0) {
          const Rat& existing = ctx.value(r, starget);
          CellConflict cf;
          cf.row = r;
          cf.col = starget;
          cf.existing = existing;
          cf.attempted = existing - resid;
          cf.rule_existing = ctx.rule_of(r, starget);
          cf.rule_attempted =
              "shifted relation " + to_string(rel.target) + " = " + rel.rhs.str() +
              " times " + to_string(s);
          return cf;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::variant<Mat, CellConflict> build_B(const MomentMatrix& m, const DeterminacyProfile& prof) {
  const unsigned d = m.degree();
  const auto rows = monomials_up_to(d);

  BuildCtx ctx;
  ctx.d = d;
  ctx.n = prof.n;
  ctx.m = prof.m;
  ctx.p = &prof.p;
  ctx.q = &prof.q;
  ctx.rows = &rows;
  ctx.top = d;
  ctx.init();

  auto old_entry = [&](const Monomial& r, const Monomial& c) -> Rat { return m.beta().at(r + c); };
  auto col_from_poly = [&](const Poly& pol) {
    return m.mat().mat().mul_vec(pol.coeff_vector(rows));
  };

  if (!run_band(ctx, old_entry, col_from_poly, true)) return *ctx.conflict;
  if (auto cf = hankel_sweep(ctx, &m.beta())) return *cf;
  if (auto cf = rg_sweep(ctx, m, kernel_relations(m))) return *cf;

  Mat b(rows.size(), d + 2);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const Monomial& c : monomials_of_degree(d + 1)) {
      if (!ctx.has(rows[i], c))
        throw std::logic_error("band construction left a cell of B undefined");
      b.at(i, c.j) = ctx.value(rows[i], c);
    }
  return b;
}

std::variant<Mat, RangeFailure> check_range(const MomentMatrix& m, const Mat& b) {
  const std::size_t nrows = m.dim();
  if (b.rows() != nrows) throw std::invalid_argument("check_range: row count mismatch");
  Mat w(nrows, b.cols());
  std::vector<Rat> col(nrows);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < nrows; ++i) col[i] = b.at(i, j);
    auto x = solve_consistent(m.mat().mat(), col);
    if (!x) return RangeFailure{monomials_of_degree(m.degree() + 1)[j]};
    for (std::size_t i = 0; i < nrows; ++i) w.at(i, j) = (*x)[i];
  }
  return w;
}

std::variant<SymMat, CellConflict> build_C(const MomentMatrix& m, const Mat& b,
                                           const DeterminacyProfile& prof) {
  const unsigned d = m.degree();
  const auto old_rows = monomials_up_to(d);
  const auto rows = monomials_of_degree(d + 1);

  BuildCtx ctx;
  ctx.d = d;
  ctx.n = prof.n;
  ctx.m = prof.m;
  ctx.p = &prof.p;
  ctx.q = &prof.q;
  ctx.rows = &rows;
  ctx.top = d + 1;
  ctx.init();

  // Old columns against degree-(d+1) rows live in B, transposed.
  auto old_entry = [&](const Monomial& r, const Monomial& c) -> Rat {
    return b.at(deglex_index(c), r.j);
  };
  auto col_from_poly = [&](const Poly& pol) {
    const auto cv = pol.coeff_vector(old_rows);
    std::vector<Rat> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rat s = 0;
      for (std::size_t z = 0; z < old_rows.size(); ++z)
        if (cv[z] != 0) s += cv[z] * b.at(z, rows[i].j);
      out[i] = s;
    }
    return out;
  };

  if (!run_band(ctx, old_entry, col_from_poly, false)) return *ctx.conflict;
  if (auto cf = hankel_sweep(ctx, nullptr)) return *cf;

  Mat c(d + 2, d + 2);
  for (const Monomial& r : rows)
    for (const Monomial& cc : rows) {
      if (!ctx.has(r, cc)) throw std::logic_error("band construction left a cell of C undefined");
      c.at(r.j, cc.j) = ctx.value(r, cc);
    }
  // The moment-index sweep covered mirrored cells, so this is symmetric.
  return SymMat(std::move(c));
}

CandidateExtension assemble(const MomentMatrix& m, const Mat& b, const SymMat& c, const Mat& w) {
  CandidateExtension out;
  out.b = b;
  out.c = c;
  out.w = w;
  out.delta = SymMat(c.mat() - w.transposed() * b);

  const PsdReport pr = psd_check(out.delta);
  out.psd = pr.psd;
  out.psd_certificate = pr.certificate;
  const std::size_t base_rank = rank(m.mat().mat());
  out.rank_next = pr.psd ? base_rank + pr.rank : 0;
  out.flat = pr.psd && pr.rank == 0;

  const unsigned d = m.degree();
  MomentSequence nb(d + 1);
  for (const Monomial& mo : monomials_up_to(2 * d)) nb.set(mo, m.beta().at(mo));
  const auto old_rows = monomials_up_to(d);
  const auto new_cols = monomials_of_degree(d + 1);
  for (std::size_t i = 0; i < old_rows.size(); ++i)
    for (const Monomial& cc : new_cols) nb.set(old_rows[i] + cc, b.at(i, cc.j));
  for (const Monomial& r : new_cols)
    for (const Monomial& cc : new_cols) nb.set(r + cc, c.at(r.j, cc.j));
  out.beta_next = nb;

  if (out.psd) {
    const MomentMatrix next = build_moment_matrix(nb, d + 1);
    const RgReport rg = is_recursively_generated(next);
    out.rg = rg.ok;
    out.rg_violation = rg.violation;
  }
  return out;
}

namespace {

CellConflict unswap(CellConflict cf, bool swapped) {
  if (swapped) {
    cf.row = cf.row.swapped();
    cf.col = cf.col.swapped();
  }
  return cf;
}

RgViolation unswap(RgViolation v, bool swapped) {
  if (swapped) {
    v.relation.target = v.relation.target.swapped();
    v.relation.rhs = v.relation.rhs.swapped_vars();
    v.multiplier = v.multiplier.swapped();
    v.row = v.row.swapped();
  }
  return v;
}

}  // namespace

StepOutcome extend_step(const MomentMatrix& m0) {
  StepOutcome out;

  const PsdReport pr = psd_check(m0.mat());
  if (!pr.psd) {
    out.reason = "matrix is not positive semidefinite";
    return out;
  }
  const RgReport rg0 = is_recursively_generated(m0);
  if (!rg0.ok) {
    out.reason = "matrix is not recursively generated";
    out.rg_violation = rg0.violation;
    return out;
  }
  auto prof = detect_rd(m0);
  if (!prof) {
    out.reason = "no recursively determinate relation pair";
    return out;
  }
  out.profile = prof;
  const bool sw = prof->roles_swapped;

  MomentMatrix work = sw ? build_moment_matrix(m0.beta().swapped(), m0.degree()) : m0;

  auto bres = build_B(work, *prof);
  if (auto* cf = std::get_if<CellConflict>(&bres)) {
    out.kind = StepKind::BInconsistent;
    out.conflict = unswap(*cf, sw);
    return out;
  }
  const Mat& b = std::get<Mat>(bres);

  auto wres = check_range(work, b);
  if (auto* rf = std::get_if<RangeFailure>(&wres)) {
    out.kind = StepKind::RangeFailure;
    out.range = RangeFailure{sw ? rf->column.swapped() : rf->column};
    return out;
  }
  const Mat& w = std::get<Mat>(wres);

  auto cres = build_C(work, b, *prof);
  if (auto* cf = std::get_if<CellConflict>(&cres)) {
    out.kind = StepKind::CInconsistent;
    out.conflict = unswap(*cf, sw);
    return out;
  }

  CandidateExtension cand = assemble(work, b, std::get<SymMat>(cres), w);
  out.delta = cand.delta;
  if (!cand.psd) {
    out.kind = StepKind::NotPsd;
    out.psd_certificate = cand.psd_certificate;
    return out;
  }
  out.flat = cand.flat;
  out.rank_next = cand.rank_next;
  if (!cand.rg) {
    out.kind = StepKind::NotRecursivelyGenerated;
    out.rg_violation = unswap(*cand.rg_violation, sw);
    return out;
  }

  out.kind = StepKind::Extended;
  const MomentSequence nb = sw ? cand.beta_next.swapped() : cand.beta_next;
  out.next = build_moment_matrix(nb, m0.degree() + 1);
  return out;
}

ChainReport run_chain(const MomentMatrix& m0, const ChainOptions& opts) {
  ChainReport rep;
  rep.start_degree = m0.degree();
  auto log = [&](const std::string& s) {
    if (opts.log) opts.log(s);
  };

  const PsdReport pr = psd_check(m0.mat());
  if (!pr.psd) {
    rep.verdict = Verdict::NotApplicable;
    rep.reason = "matrix is not positive semidefinite";
    log("precondition failed: " + rep.reason);
    return rep;
  }
  rep.start_rank = pr.rank;
  const RgReport rg0 = is_recursively_generated(m0);
  if (!rg0.ok) {
    rep.verdict = Verdict::NotApplicable;
    rep.reason = "matrix is not recursively generated";
    log("precondition failed: " + rep.reason);
    return rep;
  }
  auto prof = detect_rd(m0);
  if (!prof) {
    rep.verdict = Verdict::NotApplicable;
    rep.reason = "no recursively determinate relation pair";
    log("precondition failed: " + rep.reason);
    return rep;
  }
  rep.profile = prof;

  const unsigned d = m0.degree();
  const int band = int(prof->n) + int(prof->m) - int(d) - 1;
  rep.band_bound = band > 0 ? unsigned(band) : 0;
  log("start: degree " + std::to_string(d) + ", rank " + std::to_string(pr.rank) + ", " +
      classification_name(prof->classification) + ", band bound " +
      std::to_string(rep.band_bound));

  const bool flat0 =
      d == 0 ? pr.rank == 0
             : rank(m0.mat().leading(basis_size(d - 1)).mat()) == pr.rank;
  if (flat0) {
    rep.verdict = Verdict::MeasureExists;
    rep.flat_degree = d;
    rep.final_beta = m0.beta_ptr();
    log("already flat at degree " + std::to_string(d));
    return rep;
  }

  const unsigned limit =
      opts.max_steps ? *opts.max_steps : std::min(rep.band_bound, d >= 1 ? d - 1 : 0u);
  MomentMatrix cur = m0;
  for (unsigned k = 0; k < limit; ++k) {
    StepOutcome res = extend_step(cur);
    ChainStep st;
    st.degree = cur.degree() + 1;
    st.kind = res.kind;
    if (res.profile) st.classification = res.profile->classification;

    if (res.kind == StepKind::Extended) {
      st.rank = res.rank_next;
      st.flat = res.flat;
      rep.steps.push_back(st);
      log("M_" + std::to_string(st.degree) + ": extended, rank " + std::to_string(st.rank) +
          (st.flat ? ", flat" : ""));
      cur = *res.next;
      if (res.flat) {
        rep.verdict = Verdict::MeasureExists;
        rep.flat_degree = cur.degree();
        rep.final_beta = cur.beta_ptr();
        return rep;
      }
      continue;
    }

    rep.steps.push_back(st);
    rep.failed_degree = cur.degree() + 1;
    rep.reason = step_kind_name(res.kind);
    rep.verdict =
        res.kind == StepKind::NotApplicable ? Verdict::NotApplicable : Verdict::NoMeasure;
    rep.failure = std::move(res);
    log("M_" + std::to_string(st.degree) + ": " + rep.reason);
    return rep;
  }

  // Hitting the bound without a flat extension is an alarm; it is never
  // folded into no_measure.
  rep.verdict = Verdict::BoundExhausted;
  rep.reason = "no flat extension within the step budget";
  log(rep.reason);
  return rep;
}

}  // namespace extend
}  // namespace rdmom
