#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogniview/ast.hpp"
#include "cogniview/config.hpp"
#include "cogniview/lexer.hpp"
#include "cogniview/metrics.hpp"
#include "cogniview/source.hpp"
#include "cogniview/wrap.hpp"

namespace cogniview::emit {

struct ProvenanceEntry {
  int view_line = 0;              // 1-based
  std::optional<int> orig_line;   // nullopt for blank separator lines
  friend bool operator==(const ProvenanceEntry&, const ProvenanceEntry&) = default;
};

struct VirtualView {
  std::string text;
  std::vector<ProvenanceEntry> provenance;
  analysis::CognitiveLoadReport report_before;
  analysis::CognitiveLoadReport report_after;
  std::vector<UnbreakableLine> unbreakable;

  /// [{"view_line": n, "orig_line": m | null}, ...]
  [[nodiscard]] nlohmann::ordered_json map_json() const;
};

/// Renders `optimized` as the wrapped view. Comments of `original` are kept:
/// each is placed above the first statement line that originates at or after
/// the comment's own line, word-wrapped to the line limit when possible.
/// `view_path` names the view in report_after.
VirtualView emit_view(const syntax::ModuleAst& optimized, const syntax::SourceUnit& original,
                      const analysis::CLConfig& cfg, const std::string& view_path = "<view>");

/// Lines for one comment at `indent`, wrapped to `limit` when every word fits;
/// otherwise the single original line (second member true = over the limit).
std::pair<std::vector<std::string>, bool> layout_comment(const syntax::Comment& comment, int indent,
                                                         int limit);

}  // namespace cogniview::emit
