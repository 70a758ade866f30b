#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogniview/ast.hpp"
#include "cogniview/config.hpp"
#include "cogniview/rational.hpp"
#include "cogniview/source.hpp"

namespace cogniview::analysis {

/// Name used for the scope of top-level statements.
inline constexpr const char* kModuleScope = "<module>";

struct NestingProfile {
  std::string name;
  int max_nesting = 0;
  double mean_nesting = 0.0;
  int statements = 0;
};

/// One entry per scope: `<module>` first when there is top-level code, then
/// every function in document order ("outer.inner" for nested ones). A
/// statement's depth counts the if/while/for blocks around it inside its own
/// function, plus one per enclosing `def` for nested functions.
std::vector<NestingProfile> nesting_profile(const syntax::ModuleAst& module);

struct CallGraphInfo {
  std::vector<std::pair<std::string, std::string>> edges;  // caller → callee
  int max_depth = 0;
  std::vector<std::string> recursive;
};

/// Call graph over functions plus a `<module>` frame for top-level code (which
/// also implicitly calls a zero-parameter `main`). `max_depth` counts frames
/// along the longest call chain once functions on cycles are removed.
/// Throws Error(UnresolvedCallee) for calls to undefined functions.
CallGraphInfo call_depth(const syntax::ModuleAst& module);

struct FunctionMetrics {
  std::string name;
  int max_nesting = 0;
  double mean_nesting = 0.0;
  int peak_live = 0;
  int overload_count = 0;
};

struct OverlongLine {
  int line = 0;
  int length = 0;
  friend bool operator==(const OverlongLine&, const OverlongLine&) = default;
};

struct CognitiveLoadReport {
  std::string file;
  std::vector<FunctionMetrics> functions;
  int call_max_depth = 0;
  std::vector<std::string> recursive_names;
  std::vector<OverlongLine> overlong_lines;
  int line_limit = 0;
  int capacity = 0;
  int depth_budget = 0;
  Rational composite_score;
  std::vector<std::string> intrinsic;
  std::vector<std::string> extraneous;

  [[nodiscard]] int max_nesting() const;
  [[nodiscard]] int total_overload() const;
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Lines whose code-point count (indentation included) exceeds `limit`.
std::vector<OverlongLine> overlong_lines(const syntax::SourceUnit& source, int limit);

/// Gathers every metric and the weighted composite score
///   w_nest·Σ max(0, max_nesting − 1) + w_wm·Σ overload_count
///   + w_call·max(0, call_max_depth − depth_budget) + w_line·|overlong lines|.
CognitiveLoadReport cl_report(const syntax::ModuleAst& module, const syntax::SourceUnit& source,
                              const CLConfig& cfg);

/// JSON number for a score: an integer when exact, otherwise a double.
nlohmann::ordered_json score_to_json(const Rational& score);

}  // namespace cogniview::analysis
