#include "doctest.h"

#include "json.hpp"
#include "oracles.hpp"
#include "rdmom/fixtures.hpp"
#include "rdmom/problem_io.hpp"

using namespace rdmom;

namespace {

std::string minimal_problem() {
  return R"({
  "degree": 2,
  "moments": [
    {"i": 0, "j": 0, "value": 1},
    {"i": 1, "j": 0, "value": 2},
    {"i": 0, "j": 1, "value": "3"},
    {"i": 2, "j": 0, "value": 4},
    {"i": 1, "j": 1, "value": "6"},
    {"i": 0, "j": 2, "value": "27/3"}
  ]
})";
}

std::string parse_error(const std::string& text) {
  const auto res = io::parse_problem(text);
  REQUIRE(std::holds_alternative<io::ParseError>(res));
  return std::get<io::ParseError>(res).message;
}

}  // namespace

TEST_CASE("problem files parse integers, quoted integers and fractions") {
  const auto res = io::parse_problem(minimal_problem());
  REQUIRE(std::holds_alternative<io::ProblemFile>(res));
  const auto& p = std::get<io::ProblemFile>(res);
  CHECK(p.degree == 2);
  CHECK(p.moments.at({0, 0}) == 1);
  CHECK(p.moments.at({0, 1}) == 3);
  CHECK(p.moments.at({0, 2}) == 9);
}

TEST_CASE("problem emission round trips byte for byte") {
  io::ProblemFile p{6, fixtures::cubic_curve_family(Rat(1430))};
  const std::string text = io::emit_problem(p);
  CHECK(text == io::emit_problem(p));
  CHECK(text.back() == '\n');

  const auto back = io::parse_problem(text);
  REQUIRE(std::holds_alternative<io::ProblemFile>(back));
  const auto& q = std::get<io::ProblemFile>(back);
  CHECK(q.degree == p.degree);
  CHECK(q.moments == p.moments);
  CHECK(io::emit_problem(q) == text);
}

TEST_CASE("fractions that exceed the safe integer window are emitted as strings") {
  MomentSequence beta(1);
  beta.set({0, 0}, Rat("123456789123456789123"));
  beta.set({1, 0}, Rat(1, 3));
  beta.set({0, 1}, Rat(0));
  beta.set({2, 0}, Rat(7));
  beta.set({1, 1}, Rat(0));
  beta.set({0, 2}, Rat(1));
  io::ProblemFile p{2, beta};
  const auto parsed = io::parse_problem(io::emit_problem(p));
  REQUIRE(std::holds_alternative<io::ProblemFile>(parsed));
  CHECK(std::get<io::ProblemFile>(parsed).moments == beta);
}

TEST_CASE("parse rejects malformed problems with specific messages") {
  CHECK(parse_error("{") != "");
  CHECK(parse_error(R"({"moments": []})").find("degree") != std::string::npos);
  CHECK(parse_error(R"({"degree": 3, "moments": []})").find("even") != std::string::npos);
  CHECK(parse_error(R"({"degree": 2, "moments": []})").find("missing") != std::string::npos);

  std::string dup = minimal_problem();
  dup.insert(dup.rfind(']'), R"(, {"i": 0, "j": 0, "value": 1})");
  CHECK(parse_error(dup).find("duplicate") != std::string::npos);

  std::string bad = minimal_problem();
  bad.replace(bad.find("\"27/3\""), 6, "\"1/0\"");
  CHECK(parse_error(bad) != "");

  std::string fl = minimal_problem();
  fl.replace(fl.find("\"27/3\""), 6, "9.0");
  const auto msg = parse_error(fl);
  CHECK(msg.find("exact strings") != std::string::npos);
}

TEST_CASE("parse_rat accepts decimals exactly and rejects junk") {
  CHECK(parse_rat("2.75") == Rat(11, 4));
  CHECK(parse_rat("-0.125") == Rat(-1, 8));
  CHECK(parse_rat("1.5e3") == Rat(1500));
  CHECK(parse_rat("-12") == Rat(-12));
  CHECK(parse_rat(" 7/3 ") == Rat(7, 3));
  CHECK(!parse_rat("1/0"));
  CHECK(!parse_rat("abc"));
  CHECK(!parse_rat(""));
  CHECK(!parse_rat("1.2.3"));
}

TEST_CASE("exit codes follow the verdict table") {
  CHECK(io::exit_code_for(extend::Verdict::MeasureExists) == 0);
  CHECK(io::exit_code_for(extend::Verdict::NoMeasure) == 2);
  CHECK(io::exit_code_for(extend::Verdict::BoundExhausted) == 3);
  CHECK(io::exit_code_for(extend::Verdict::NotApplicable) == 3);
}

TEST_CASE("analyze report carries the structural summary") {
  const auto beta = fixtures::cubic_curve_family(Rat(1430));
  const auto m = build_moment_matrix(beta, 3);
  io::AnalyzeData data;
  data.degree = 6;
  data.psd = psd_check(m.mat());
  data.relation_count = kernel_relations(m).size();
  data.rg = is_recursively_generated(m);
  data.profile = detect_rd(m);
  io::ReportOptions opts;
  opts.deterministic = true;
  opts.command = "analyze";

  const auto j = nlohmann::json::parse(io::analyze_report(data, opts));
  CHECK(j["schema"] == "rdmom.report.v1");
  CHECK(j["command"] == "analyze");
  CHECK(j["psd"] == true);
  CHECK(j["rank"] == 8);
  CHECK(j["kernel_relations"] == 2);
  CHECK(j["recursively_generated"] == true);
  CHECK(j["rd"]["n"] == 3);
  CHECK(j["rd"]["m"] == 3);
  CHECK(j["timing_ms"] == 0.0);

  opts.format = "text";
  const auto text = io::analyze_report(data, opts);
  CHECK(text.find("rank") != std::string::npos);
}

TEST_CASE("chain report serializes verdict, steps and the failure payload") {
  {
    const auto m = build_moment_matrix(fixtures::cubic_curve_family(Rat(1430)), 3);
    io::SolveData data;
    data.chain = extend::run_chain(m);
    data.variety = 9;
    data.variety_bound = 1;
    io::ReportOptions opts;
    opts.deterministic = true;
    const auto j = nlohmann::json::parse(io::chain_report(data, opts));
    CHECK(j["verdict"] == "measure_exists");
    CHECK(j["exit_code"] == 0);
    CHECK(j["flat_degree"] == 5);
    CHECK(j["steps"].size() == 2);
    CHECK(j["steps"][0]["rank"] == 9);
    CHECK(j["steps"][0]["classification"] == "rd_ext_hypothesis");
    CHECK(j["variety"] == 9);
  }
  {
    const auto m = build_moment_matrix(fixtures::overdetermined_family(Rat(300)), 3);
    io::SolveData data;
    data.chain = extend::run_chain(m);
    io::ReportOptions opts;
    opts.deterministic = true;
    const auto j = nlohmann::json::parse(io::chain_report(data, opts));
    CHECK(j["verdict"] == "no_measure");
    CHECK(j["exit_code"] == 2);
    CHECK(j["failed_degree"] == 4);
    CHECK(j["failure"]["outcome"] == "b_inconsistent");
    CHECK(j["failure"]["conflict"]["row"] == "x y^2");
    CHECK(j["failure"]["conflict"]["col"] == "x^3 y");
    CHECK(j["variety"].is_null());
  }
}
