#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cogniview/ast.hpp"
#include "cogniview/config.hpp"
#include "cogniview/printer.hpp"

namespace cogniview::emit {

/// One physical line of the wrapped view.
struct ViewLine {
  std::string text;                     // indentation included, no newline
  Span origin;                        // invalid for blank separator lines
  const syntax::Stmt* stmt = nullptr;   // statement introduced on this line
  bool continuation = false;
};

struct UnbreakableLine {
  int view_line = 0;  // 1-based
  int length = 0;     // code points
  friend bool operator==(const UnbreakableLine&, const UnbreakableLine&) = default;
};

struct WrapResult {
  std::vector<ViewLine> lines;
  std::vector<UnbreakableLine> unbreakable;

  /// Lines joined with '\n', each terminated.
  [[nodiscard]] std::string text() const;
};

/// Splits one rendered line so every piece fits within `limit` code points.
/// A bare binary/unary target expression is parenthesized first; breaks go
/// before binary operators or after commas inside brackets. Among the
/// shallowest, loosest-binding break class that admits a fitting layout, the
/// result has the fewest lines, then the narrowest widest line, then the
/// earliest breaks. Returns nullopt when no layout fits.
std::optional<std::vector<std::string>> wrap_line(const syntax::RenderedLine& line, int limit);

/// Canonical text of `module` with every over-long line wrapped; lines that
/// cannot be wrapped are kept intact and listed in `unbreakable`.
WrapResult wrap_lines(const syntax::ModuleAst& module, const analysis::CLConfig& cfg);

}  // namespace cogniview::emit
