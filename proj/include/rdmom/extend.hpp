#pragma once

#include "rdmom/exactla.hpp"
#include "rdmom/relations.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rdmom {
namespace extend {

// Two construction rules met at one cell of a candidate block with different
// values. The rule strings name the phases (or the relation) involved.
struct CellConflict {
  Monomial row, col;
  Rat existing, attempted;
  std::string rule_existing, rule_attempted;
};

struct RangeFailure {
  Monomial column;  // first new column (deglex order) outside range(M_k)
};

// Everything known about one candidate one-degree extension.
struct CandidateExtension {
  Mat b;         // N_k rows, k+2 new columns
  SymMat c;      // (k+2) x (k+2)
  Mat w;         // M w = b
  SymMat delta;  // c - w^T b
  bool psd = false;
  std::size_t rank_next = 0;
  bool flat = false;
  bool rg = false;  // extended matrix still recursively generated
  std::optional<PsdCertificate> psd_certificate;
  std::optional<RgViolation> rg_violation;
  MomentSequence beta_next;  // degree 2(k+1), same frame as the input matrix
};

enum class StepKind {
  Extended,
  BInconsistent,
  CInconsistent,
  RangeFailure,
  NotPsd,
  NotRecursivelyGenerated,
  NotApplicable,
};
const char* step_kind_name(StepKind k);

// Result of one extension attempt. Monomial-valued certificates are reported
// in the input frame (un-swapped); matrix payloads stay in the working frame.
struct StepOutcome {
  StepKind kind = StepKind::NotApplicable;
  std::optional<DeterminacyProfile> profile;
  std::optional<MomentMatrix> next;  // Extended only, input frame
  bool flat = false;
  std::size_t rank_next = 0;
  std::optional<SymMat> delta;                    // Extended / NotPsd
  std::optional<CellConflict> conflict;           // BInconsistent / CInconsistent
  std::optional<RangeFailure> range;              // RangeFailure
  std::optional<PsdCertificate> psd_certificate;  // NotPsd; indices into degree-(k+1) monomials
  std::optional<RgViolation> rg_violation;        // NotRecursivelyGenerated
  std::string reason;                             // NotApplicable
};

// Candidate block of new columns against the old rows. m and prof must share
// one frame. The construction is band by band; every doubly-defined cell is
// cross-checked, then a full moment-index sweep and a relation sweep run over
// the result.
std::variant<Mat, CellConflict> build_B(const MomentMatrix& m, const DeterminacyProfile& prof);

// W with M W = B, column by column. Fails on the first new column whose
// moments cannot be realized inside the old column space.
std::variant<Mat, RangeFailure> check_range(const MomentMatrix& m, const Mat& b);

// Lower-right block, built by the same band construction with the rows of
// degree k+1; prior entries are read from B transposed.
std::variant<SymMat, CellConflict> build_C(const MomentMatrix& m, const Mat& b,
                                           const DeterminacyProfile& prof);

// Glue: Schur complement, PSD/rank/flatness, the extended sequence, and the
// recursive-generation check of the extended matrix.
CandidateExtension assemble(const MomentMatrix& m, const Mat& b, const SymMat& c, const Mat& w);

// One full extension attempt. Verifies PSD, recursive generation and the
// determinate pair internally and reports NotApplicable instead of throwing.
StepOutcome extend_step(const MomentMatrix& m);

struct ChainOptions {
  std::optional<unsigned> max_steps;  // overrides the band bound
  std::function<void(const std::string&)> log;
};

enum class Verdict { MeasureExists, NoMeasure, BoundExhausted, NotApplicable };
const char* verdict_name(Verdict v);

struct ChainStep {
  unsigned degree = 0;  // degree of the attempted extension
  StepKind kind = StepKind::NotApplicable;
  std::size_t rank = 0;  // rank at `degree` when extended
  bool flat = false;
  Classification classification = Classification::GeneralRd;  // of the matrix that was extended
};

struct ChainReport {
  Verdict verdict = Verdict::NotApplicable;
  unsigned start_degree = 0;
  std::size_t start_rank = 0;
  unsigned flat_degree = 0;    // MeasureExists
  unsigned failed_degree = 0;  // NoMeasure
  std::string reason;          // NoMeasure step kind / NotApplicable cause
  std::vector<ChainStep> steps;
  unsigned band_bound = 0;  // n + m - k - 1 clamped at 0
  std::optional<DeterminacyProfile> profile;
  std::optional<StepOutcome> failure;  // the failing step, when NoMeasure
  // Input-frame sequence reaching degree 2 * flat_degree on success.
  std::shared_ptr<const MomentSequence> final_beta;
};

// Chase the forced extensions until flat, failed, or out of budget. The
// number of attempts is capped by min(band_bound, k - 1) unless overridden.
ChainReport run_chain(const MomentMatrix& m, const ChainOptions& opts = {});

}  // namespace extend
}  // namespace rdmom
