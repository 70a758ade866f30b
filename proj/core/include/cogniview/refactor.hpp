#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cogniview/ast.hpp"
#include "cogniview/config.hpp"
#include "cogniview/rational.hpp"

namespace cogniview::refactor {

/// Declaration order is the tie-break order of the optimizer.
enum class TransformKind { GuardClause, LoopContinue, LiftNested, InlineSingleCall, SplitWebs };

std::string_view to_string(TransformKind kind);

/// A place where one transformation applies.
///  - GuardClause, LoopContinue: `site` is the If statement.
///  - LiftNested: `site` is the nested `def`.
///  - InlineSingleCall: `site` is the calling statement, `detail` the callee.
///  - SplitWebs: `site` is the function's `def` (empty for top-level code),
///    `detail` the variable.
struct TransformationCandidate {
  TransformKind kind = TransformKind::GuardClause;
  syntax::StmtPath site;
  std::string detail;
  Rational predicted_delta;

  /// Human-readable site, e.g. "0.body[2]" or "<module>".
  [[nodiscard]] std::string site_label(const syntax::ModuleAst& module) const;
};

/// Composite score of the module as the view would show it: canonical
/// printing plus line wrapping.
Rational view_score(const syntax::ModuleAst& module, const analysis::CLConfig& cfg);

/// Every applicable site, kind by kind in enum order and in document order
/// within a kind. `predicted_delta` is left at zero.
std::vector<TransformationCandidate> find_sites(const syntax::ModuleAst& module);

/// find_sites with `predicted_delta` filled in by applying each candidate to
/// a copy and scoring the result.
std::vector<TransformationCandidate> enumerate_candidates(const syntax::ModuleAst& module,
                                                          const analysis::CLConfig& cfg);

/// Returns the transformed copy. Throws Error(StaleCandidate) when the site
/// does not have the expected shape and Error(NameCollisionExhausted) when no
/// fresh name can be found for a lifted function.
syntax::ModuleAst apply_transformation(const syntax::ModuleAst& module,
                                       const TransformationCandidate& cand);

/// Whether the block's last statement is a return, or an if/else whose
/// branches all end in return.
bool ends_in_return(const syntax::Block& block);

}  // namespace cogniview::refactor
