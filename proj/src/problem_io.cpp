#include "rdmom/problem_io.hpp"

#include "json.hpp"

#include <cinttypes>
#include <cstdio>

namespace rdmom {
namespace io {

using nlohmann::json;
using nlohmann::ordered_json;

std::variant<ProblemFile, ParseError> parse_problem(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    return ParseError{std::string("invalid JSON: ") + e.what()};
  }
  if (!j.is_object()) return ParseError{"top level must be an object"};
  if (!j.contains("degree") || !j["degree"].is_number_integer() || j["degree"].get<long long>() < 0)
    return ParseError{"missing or invalid \"degree\""};
  const long long deg_ll = j["degree"].get<long long>();
  if (deg_ll < 2 || deg_ll % 2 != 0 || deg_ll > 60)
    return ParseError{"\"degree\" must be an even integer between 2 and 60"};
  const unsigned degree = unsigned(deg_ll);
  if (!j.contains("moments") || !j["moments"].is_array())
    return ParseError{"missing \"moments\" array"};

  MomentSequence seq(degree / 2);
  std::vector<bool> seen(basis_size(degree), false);
  for (const auto& e : j["moments"]) {
    if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("value"))
      return ParseError{"each moment needs \"i\", \"j\" and \"value\""};
    if (!e["i"].is_number_integer() || !e["j"].is_number_integer() ||
        e["i"].get<long long>() < 0 || e["j"].get<long long>() < 0)
      return ParseError{"moment indices must be nonnegative integers"};
    const unsigned mi = e["i"].get<unsigned>(), mj = e["j"].get<unsigned>();
    if (mi + mj > degree)
      return ParseError{"moment index (" + std::to_string(mi) + "," + std::to_string(mj) +
                        ") exceeds the stated degree"};
    Rat v;
    const auto& val = e["value"];
    if (val.is_number_integer()) {
      v = Rat(std::to_string(val.get<long long>()));
    } else if (val.is_string()) {
      auto r = parse_rat(val.get<std::string>());
      if (!r)
        return ParseError{"cannot parse moment value \"" + val.get<std::string>() + "\""};
      v = *r;
    } else if (val.is_number_float()) {
      return ParseError{
          "floating moment values are not accepted; quote them as exact strings like \"2.75\""};
    } else {
      return ParseError{"moment value must be an integer or a string"};
    }
    const Monomial m{mi, mj};
    if (seen[deglex_index(m)])
      return ParseError{"duplicate moment (" + std::to_string(mi) + "," + std::to_string(mj) + ")"};
    seen[deglex_index(m)] = true;
    seq.set(m, v);
  }

  std::string missing;
  for (const Monomial& m : monomials_up_to(degree)) {
    if (seen[deglex_index(m)]) continue;
    if (!missing.empty()) missing += ", ";
    missing += "(" + std::to_string(m.i) + "," + std::to_string(m.j) + ")";
  }
  if (!missing.empty()) return ParseError{"missing moments: " + missing};
  return ProblemFile{degree, std::move(seq)};
}

namespace {

ordered_json rat_json(const Rat& v) {
  if (v.get_den() == 1 && v.get_num().fits_slong_p()) {
    const long n = v.get_num().get_si();
    if (n < (1L << 53) && n > -(1L << 53)) return ordered_json(n);
  }
  return ordered_json(rat_str(v));
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json profile_json(const DeterminacyProfile& prof) {
  ordered_json p;
  p["n"] = prof.n;
  p["m"] = prof.m;
  p["roles_swapped"] = prof.roles_swapped;
  p["classification"] = classification_name(prof.classification);
  const auto [fx, fy] = prof.generators_input_frame();
  p["x_generator"] = fx.str();
  p["y_generator"] = fy.str();
  return p;
}

ordered_json psd_cert_json(const PsdCertificate& c) {
  ordered_json out;
  out["kind"] = c.kind == PsdCertificate::Kind::NegativePivot ? "negative_pivot"
                                                              : "zero_diagonal_nonzero_row";
  out["minor"] = c.minor;
  out["row"] = c.row;
  out["col"] = c.col;
  return out;
}

ordered_json rg_violation_json(const RgViolation& v) {
  ordered_json out;
  out["relation"] = to_string(v.relation.target) + " = " + v.relation.rhs.str();
  out["multiplier"] = to_string(v.multiplier);
  out["row"] = to_string(v.row);
  out["residual"] = rat_str(v.residual);
  return out;
}

ordered_json conflict_json(const extend::CellConflict& c) {
  ordered_json out;
  out["row"] = to_string(c.row);
  out["col"] = to_string(c.col);
  out["existing"] = rat_str(c.existing);
  out["attempted"] = rat_str(c.attempted);
  out["rule_existing"] = c.rule_existing;
  out["rule_attempted"] = c.rule_attempted;
  return out;
}

ordered_json failure_json(const extend::StepOutcome& f) {
  ordered_json out;
  out["outcome"] = extend::step_kind_name(f.kind);
  if (f.conflict) out["conflict"] = conflict_json(*f.conflict);
  if (f.range) out["column"] = to_string(f.range->column);
  if (f.psd_certificate) out["psd_certificate"] = psd_cert_json(*f.psd_certificate);
  if (f.rg_violation) out["rg_violation"] = rg_violation_json(*f.rg_violation);
  if (!f.reason.empty()) out["reason"] = f.reason;
  return out;
}

ordered_json measure_json(const MeasureReport& m) {
  ordered_json out;
  out["ok"] = m.ok;
  if (!m.error.empty()) out["error"] = m.error;
  out["flat_rank"] = m.flat_rank;
  out["atoms"] = ordered_json::array();
  for (const Atom& a : m.atoms) {
    ordered_json e;
    e["x"] = a.x;
    e["y"] = a.y;
    e["weight"] = a.weight;
    out["atoms"].push_back(e);
  }
  out["residual_max"] = m.residual_max;
  out["tolerance"] = m.tol_abs;
  ordered_json checks;
  checks["weights_positive"] = m.weights_positive;
  checks["atoms_on_generators"] = m.atoms_on_generators;
  checks["moments_match"] = m.moments_match;
  checks["count_matches"] = m.count_matches;
  out["checks"] = checks;
  return out;
}

double timing(const ReportOptions& opts) { return opts.deterministic ? 0.0 : opts.elapsed_ms; }

}  // namespace

std::string analyze_report(const AnalyzeData& data, const ReportOptions& opts) {
  if (opts.format == "text") {
    std::string s;
    s += "degree: " + std::to_string(data.degree) + " (matrix degree " +
         std::to_string(data.degree / 2) + ", dimension " +
         std::to_string(basis_size(data.degree / 2)) + ")\n";
    s += std::string("psd: ") + (data.psd.psd ? "yes" : "no") + "\n";
    if (data.psd.psd) s += "rank: " + std::to_string(data.psd.rank) + "\n";
    s += std::string("flat: ") + (data.flat ? "yes" : "no") + "\n";
    s += "kernel relations: " + std::to_string(data.relation_count) + "\n";
    s += std::string("recursively generated: ") + (data.rg.ok ? "yes" : "no") + "\n";
    s += "structure violations: " + std::to_string(data.structure_violations) + "\n";
    if (data.profile) {
      const auto [fx, fy] = data.profile->generators_input_frame();
      s += std::string("recursively determinate: yes") +
           (data.profile->roles_swapped ? " (roles swapped)" : "") + "\n";
      s += "classification: " + std::string(classification_name(data.profile->classification)) +
           "\n";
      s += "x generator: " + fx.str() + "\n";
      s += "y generator: " + fy.str() + "\n";
    } else {
      s += "recursively determinate: no\n";
    }
    return s;
  }

  ordered_json j;
  j["schema"] = "rdmom.report.v1";
  j["command"] = "analyze";
  j["degree"] = data.degree;
  j["matrix_degree"] = data.degree / 2;
  j["matrix_dim"] = basis_size(data.degree / 2);
  j["psd"] = data.psd.psd;
  if (data.psd.psd)
    j["rank"] = data.psd.rank;
  else if (data.psd.certificate)
    j["psd_certificate"] = psd_cert_json(*data.psd.certificate);
  j["flat"] = data.flat;
  j["kernel_relations"] = data.relation_count;
  j["recursively_generated"] = data.rg.ok;
  if (data.rg.violation) j["rg_violation"] = rg_violation_json(*data.rg.violation);
  j["structure_violations"] = data.structure_violations;
  j["recursively_determinate"] = data.profile.has_value();
  if (data.profile) j["rd"] = profile_json(*data.profile);
  j["timing_ms"] = timing(opts);
  return j.dump(2) + "\n";
}

std::string chain_report(const SolveData& data, const ReportOptions& opts) {
  const extend::ChainReport& ch = data.chain;

  if (opts.format == "text") {
    std::string s;
    s += std::string("verdict: ") + extend::verdict_name(ch.verdict) + "\n";
    s += "start: matrix degree " + std::to_string(ch.start_degree) + ", rank " +
         std::to_string(ch.start_rank) + "\n";
    if (ch.profile) {
      const auto [fx, fy] = ch.profile->generators_input_frame();
      s += "classification: " +
           std::string(classification_name(ch.profile->classification)) +
           (ch.profile->roles_swapped ? " (roles swapped)" : "") + "\n";
      s += "generators: " + fx.str() + " ; " + fy.str() + "\n";
      s += "band bound: " + std::to_string(ch.band_bound) + "\n";
    }
    for (const extend::ChainStep& st : ch.steps) {
      s += "step M_" + std::to_string(st.degree) + ": " + extend::step_kind_name(st.kind);
      if (st.kind == extend::StepKind::Extended) {
        s += ", rank " + std::to_string(st.rank);
        if (st.flat) s += ", flat";
      }
      s += "\n";
    }
    if (ch.verdict == extend::Verdict::MeasureExists)
      s += "flat degree: " + std::to_string(ch.flat_degree) + "\n";
    if (ch.verdict == extend::Verdict::NoMeasure)
      s += "failed degree: " + std::to_string(ch.failed_degree) + " (" + ch.reason + ")\n";
    if (ch.verdict == extend::Verdict::NotApplicable ||
        ch.verdict == extend::Verdict::BoundExhausted)
      s += "reason: " + ch.reason + "\n";
    if (data.variety)
      s += "variety points: " + std::to_string(*data.variety) +
           (data.variety_bound ? " (cardinality bound " + std::to_string(*data.variety_bound) + ")"
                               : "") +
           "\n";
    if (data.measure) {
      const MeasureReport& m = *data.measure;
      s += std::string("measure: ") + (m.ok ? "verified" : ("failed (" + m.error + ")")) + ", " +
           std::to_string(m.atoms.size()) + " atoms, max residual " + fmt_double(m.residual_max) +
           "\n";
      for (const Atom& a : m.atoms)
        s += "  atom x=" + fmt_double(a.x) + " y=" + fmt_double(a.y) +
             " weight=" + fmt_double(a.weight) + "\n";
    }
    return s;
  }

  ordered_json j;
  j["schema"] = "rdmom.report.v1";
  j["command"] = opts.command;
  j["verdict"] = extend::verdict_name(ch.verdict);
  j["exit_code"] = exit_code_for(ch.verdict);
  j["start_degree"] = ch.start_degree;
  j["start_rank"] = ch.start_rank;
  j["band_bound"] = ch.band_bound;
  j["recursively_determinate"] = ch.profile.has_value();
  if (ch.profile) j["rd"] = profile_json(*ch.profile);
  j["steps"] = ordered_json::array();
  for (const extend::ChainStep& st : ch.steps) {
    ordered_json e;
    e["degree"] = st.degree;
    e["outcome"] = extend::step_kind_name(st.kind);
    e["classification"] = classification_name(st.classification);
    if (st.kind == extend::StepKind::Extended) {
      e["rank"] = st.rank;
      e["flat"] = st.flat;
    }
    j["steps"].push_back(e);
  }
  if (ch.verdict == extend::Verdict::MeasureExists) j["flat_degree"] = ch.flat_degree;
  if (ch.verdict == extend::Verdict::NoMeasure) j["failed_degree"] = ch.failed_degree;
  if (!ch.reason.empty()) j["reason"] = ch.reason;
  if (ch.failure) j["failure"] = failure_json(*ch.failure);
  j["variety"] = data.variety ? ordered_json(*data.variety) : ordered_json(nullptr);
  j["variety_bound"] =
      data.variety_bound ? ordered_json(*data.variety_bound) : ordered_json(nullptr);
  if (data.measure) j["measure"] = measure_json(*data.measure);
  j["timing_ms"] = timing(opts);
  return j.dump(2) + "\n";
}

std::string emit_problem(const ProblemFile& p) {
  ordered_json j;
  j["degree"] = p.degree;
  j["moments"] = ordered_json::array();
  for (const Monomial& m : monomials_up_to(p.degree)) {
    ordered_json e;
    e["i"] = m.i;
    e["j"] = m.j;
    e["value"] = rat_json(p.moments.at(m));
    j["moments"].push_back(e);
  }
  return j.dump(2) + "\n";
}

int exit_code_for(extend::Verdict v) {
  switch (v) {
    case extend::Verdict::MeasureExists: return 0;
    case extend::Verdict::NoMeasure: return 2;
    case extend::Verdict::BoundExhausted: return 3;
    case extend::Verdict::NotApplicable: return 3;
  }
  return 1;
}

}  // namespace io
}  // namespace rdmom
