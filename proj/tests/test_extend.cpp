#include "doctest.h"

#include "oracles.hpp"
#include "rdmom/extend.hpp"
#include "rdmom/fixtures.hpp"

using namespace rdmom;
using extend::StepKind;
using extend::Verdict;

namespace {

MomentMatrix point_mass_matrix() {
  RatMeasure mu;
  mu.atoms.push_back({Rat(2), Rat(3), Rat(1)});
  return build_moment_matrix(moments_from_atoms(mu, 1), 1);
}

}  // namespace

TEST_CASE("candidate blocks for a point mass continue the power table") {
  const auto m = point_mass_matrix();
  const auto prof = detect_rd(m);
  REQUIRE(prof);

  const auto bres = extend::build_B(m, *prof);
  REQUIRE(std::holds_alternative<Mat>(bres));
  const Mat& b = std::get<Mat>(bres);
  REQUIRE(b.rows() == 3);
  REQUIRE(b.cols() == 3);
  const long expect_b[3][3] = {{4, 6, 9}, {8, 12, 18}, {12, 18, 27}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(b.at(i, j) == expect_b[i][j]);

  const auto cres = extend::build_C(m, b, *prof);
  REQUIRE(std::holds_alternative<SymMat>(cres));
  const SymMat& c = std::get<SymMat>(cres);
  const long expect_c[3][3] = {{16, 24, 36}, {24, 36, 54}, {36, 54, 81}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(c.at(i, j) == expect_c[i][j]);

  const auto step = extend::extend_step(m);
  CHECK(step.kind == StepKind::Extended);
  CHECK(step.flat);
  CHECK(step.rank_next == 1);
  REQUIRE(step.next);
  CHECK(step.next->beta().at({4, 0}) == 16);
  CHECK(step.next->beta().at({2, 2}) == 36);
  CHECK(step.next->beta().at({0, 4}) == 81);
}

TEST_CASE("extension never rewrites the moments it started from") {
  const auto m = build_moment_matrix(fixtures::grid_family(3, 3), 3);
  const auto step = extend::extend_step(m);
  REQUIRE(step.kind == StepKind::Extended);
  const auto& nb = step.next->beta();
  for (const auto& mono : monomials_up_to(6)) CHECK(nb.at(mono) == m.beta().at(mono));
}

TEST_CASE("extension output is deterministic") {
  const auto m = build_moment_matrix(fixtures::grid_family(3, 3), 3);
  const auto s1 = extend::extend_step(m);
  const auto s2 = extend::extend_step(m);
  REQUIRE(s1.kind == StepKind::Extended);
  REQUIRE(s2.kind == StepKind::Extended);
  CHECK(s1.next->beta() == s2.next->beta());
  CHECK(s1.rank_next == s2.rank_next);
}

TEST_CASE("a flat start resolves without any extension step") {
  RatMeasure mu;
  mu.atoms.push_back({Rat(0), Rat(0), Rat(1)});
  mu.atoms.push_back({Rat(1), Rat(1), Rat(1)});
  const auto m = build_moment_matrix(moments_from_atoms(mu, 2), 2);
  const auto rep = extend::run_chain(m);
  CHECK(rep.verdict == Verdict::MeasureExists);
  CHECK(rep.flat_degree == 2);
  CHECK(rep.steps.empty());
  CHECK(rep.start_rank == 2);
  REQUIRE(rep.final_beta);
  CHECK(*rep.final_beta == m.beta());
}

TEST_CASE("step budget override stops the chain early") {
  const auto m = build_moment_matrix(fixtures::grid_family(3, 3), 3);
  extend::ChainOptions opts;
  opts.max_steps = 1;
  const auto rep = extend::run_chain(m, opts);
  CHECK(rep.verdict == Verdict::BoundExhausted);
  REQUIRE(rep.steps.size() == 1);
  CHECK(rep.steps[0].kind == StepKind::Extended);
  CHECK(rep.steps[0].rank == 9);
  CHECK(!rep.steps[0].flat);
  CHECK(std::string(extend::verdict_name(Verdict::BoundExhausted)) == "bound_exhausted");
}

TEST_CASE("matrices without the determinate pair are rejected up front") {
  const auto m = build_moment_matrix(fixtures::grid_family(3, 2), 2);
  const auto step = extend::extend_step(m);
  CHECK(step.kind == StepKind::NotApplicable);
  CHECK(step.reason == "no recursively determinate relation pair");
  const auto rep = extend::run_chain(m);
  CHECK(rep.verdict == Verdict::NotApplicable);
  CHECK(rep.reason == step.reason);
}

TEST_CASE("indefinite and non recursively generated inputs are rejected up front") {
  MomentSequence neg(1);
  neg.set({0, 0}, Rat(-1));
  const auto m1 = build_moment_matrix(neg, 1);
  CHECK(extend::extend_step(m1).kind == StepKind::NotApplicable);
  CHECK(extend::extend_step(m1).reason == "matrix is not positive semidefinite");

  MomentSequence beta(2);
  beta.set({0, 0}, Rat(1));
  beta.set({4, 0}, Rat(1));
  const auto m2 = build_moment_matrix(beta, 2);
  const auto step = extend::extend_step(m2);
  CHECK(step.kind == StepKind::NotApplicable);
  CHECK(step.reason == "matrix is not recursively generated");
  CHECK(extend::run_chain(m2).verdict == Verdict::NotApplicable);
}

TEST_CASE("conflicting construction rules produce an exact cell certificate") {
  const auto m = build_moment_matrix(fixtures::overdetermined_family(Rat(300)), 3);
  const auto step = extend::extend_step(m);
  CHECK(step.kind == StepKind::BInconsistent);
  REQUIRE(step.conflict);
  CHECK(step.conflict->row == Monomial{1, 2});
  CHECK(step.conflict->col == Monomial{3, 1});
  CHECK(step.conflict->existing - step.conflict->attempted == Rat(1238, 13));
  CHECK(!step.conflict->rule_existing.empty());
  CHECK(!step.conflict->rule_attempted.empty());

  const auto rep = extend::run_chain(m);
  CHECK(rep.verdict == Verdict::NoMeasure);
  CHECK(rep.failed_degree == 4);
  CHECK(rep.reason == "b_inconsistent");
}

TEST_CASE("chains work identically on the swapped variable order") {
  const auto m = build_moment_matrix(fixtures::cubic_curve_family(Rat(1429)).swapped(), 3);
  const auto rep = extend::run_chain(m);
  CHECK(rep.verdict == Verdict::MeasureExists);
  CHECK(rep.flat_degree == 4);
  CHECK(rep.start_rank == 8);
  REQUIRE(rep.profile);
  CHECK(rep.profile->roles_swapped);
  REQUIRE(rep.steps.size() == 1);
  CHECK(rep.steps[0].rank == 8);
  // the extended sequence stays in the caller's frame
  CHECK(rep.final_beta->at({0, 6}) == m.beta().at({0, 6}));
}

TEST_CASE("chain narration goes through the hook") {
  std::vector<std::string> lines;
  extend::ChainOptions opts;
  opts.log = [&](const std::string& s) { lines.push_back(s); };
  const auto m = build_moment_matrix(fixtures::grid_family(2, 2), 2);
  const auto rep = extend::run_chain(m, opts);
  CHECK(rep.verdict == Verdict::MeasureExists);
  CHECK(lines.size() >= rep.steps.size());
}

TEST_CASE("step kind names are stable report strings") {
  CHECK(std::string(extend::step_kind_name(StepKind::Extended)) == "extended");
  CHECK(std::string(extend::step_kind_name(StepKind::BInconsistent)) == "b_inconsistent");
  CHECK(std::string(extend::step_kind_name(StepKind::CInconsistent)) == "c_inconsistent");
  CHECK(std::string(extend::step_kind_name(StepKind::RangeFailure)) == "range_failure");
  CHECK(std::string(extend::step_kind_name(StepKind::NotPsd)) == "not_psd");
  CHECK(std::string(extend::step_kind_name(StepKind::NotRecursivelyGenerated)) ==
        "not_recursively_generated");
  CHECK(std::string(extend::step_kind_name(StepKind::NotApplicable)) == "not_applicable");
}
