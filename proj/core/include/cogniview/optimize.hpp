#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogniview/ast.hpp"
#include "cogniview/config.hpp"
#include "cogniview/equivalence.hpp"
#include "cogniview/rational.hpp"
#include "cogniview/refactor.hpp"

namespace cogniview::refactor {

enum class TraceStatus { Applied, Rejected };

struct TraceEntry {
  TransformKind kind = TransformKind::GuardClause;
  std::string site;    // path label in the module the candidate was found in
  std::string detail;  // callee / variable / lifted name, if any
  Rational score_before;
  Rational score_after;
  TraceStatus status = TraceStatus::Applied;
  std::string reason;  // "no-improvement" or "equivalence-failure" when rejected
  std::optional<interp::Counterexample> counterexample;

  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

struct OptimizeTrace {
  std::vector<TraceEntry> entries;
  int iterations = 0;
  /// Result of the closing full re-check (absent with check disabled).
  std::optional<interp::EquivalenceVerdict> final_check;

  [[nodiscard]] std::size_t applied_count() const;
  [[nodiscard]] std::size_t equivalence_failures() const;
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

struct OptimizeResult {
  syntax::ModuleAst module;
  OptimizeTrace trace;
  Rational score_before;  // view score of the input
  Rational score_after;
};

/// Greedy loop: apply the candidate with the largest strict score decrease
/// (ties by kind, then document order) until none improves or cfg.max_iters
/// steps were taken. With `check`, each step must be behaviorally equivalent
/// to the input module or the candidate is rejected for the rest of the run.
OptimizeResult optimize(const syntax::ModuleAst& module, const analysis::CLConfig& cfg, bool check = true);

}  // namespace cogniview::refactor
