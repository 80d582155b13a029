#pragma once

#include "rdmom/extend.hpp"
#include "rdmom/measure.hpp"

#include <string>
#include <variant>

namespace rdmom {
namespace io {

// On-disk problem: {"degree": 2d, "moments": [{"i":..,"j":..,"value":..}, ..]}.
// Values are JSON integers or strings ("7/3", "2.75"); every index with
// i + j <= degree must appear exactly once.
struct ProblemFile {
  unsigned degree = 0;  // even, >= 2
  MomentSequence moments;
};

struct ParseError {
  std::string message;
};

std::variant<ProblemFile, ParseError> parse_problem(const std::string& json_text);

// Deterministic serialization: moments in deglex order, exact values, two
// space indent, trailing newline. parse_problem(emit_problem(p)) == p.
std::string emit_problem(const ProblemFile& p);

struct ReportOptions {
  bool deterministic = false;  // zero the timing field
  std::string format = "json";  // "json" | "text"
  std::string command = "chain";
  double elapsed_ms = 0;
};

// Structural summary of the input matrix (no chain run).
struct AnalyzeData {
  unsigned degree = 0;
  PsdReport psd;
  bool flat = false;
  std::size_t relation_count = 0;
  RgReport rg;
  std::optional<DeterminacyProfile> profile;
  std::size_t structure_violations = 0;
};

std::string analyze_report(const AnalyzeData& data, const ReportOptions& opts);

// Chain (and optionally measure) report. `measure` may be null; `variety` and
// `variety_bound` are only present when the resultant was small enough.
struct SolveData {
  extend::ChainReport chain;
  const MeasureReport* measure = nullptr;
  std::optional<std::size_t> variety;
  std::optional<long> variety_bound;
};

std::string chain_report(const SolveData& data, const ReportOptions& opts);

int exit_code_for(extend::Verdict v);

}  // namespace io
}  // namespace rdmom
