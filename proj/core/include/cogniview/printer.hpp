#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cogniview/ast.hpp"

namespace cogniview::syntax {

enum class BreakKind { None, BeforeOperator, AfterComma };

/// One printed token plus the layout facts the line wrapper needs.
struct Piece {
  std::string text;
  bool space_before = false;
  int depth = 0;  // number of enclosing ( or [
  BreakKind brk = BreakKind::None;
  int tier = 0;   // 0 for commas, otherwise the operator's Precedence
};

/// One physical line of canonical output.
struct RenderedLine {
  int indent = 0;
  std::vector<Piece> pieces;  // empty for blank separator lines
  Span origin;                // provenance of the statement or clause
  const Stmt* stmt = nullptr; // the statement this line introduces, if any
  /// Half-open piece range of the expression the wrapper parenthesizes.
  std::optional<std::pair<std::size_t, std::size_t>> wrap_target;
  bool target_bracketed = false;
};

/// Concatenates pieces with canonical single spaces.
std::string join_pieces(const std::vector<Piece>& pieces, std::size_t begin = 0,
                        std::size_t end = static_cast<std::size_t>(-1));

std::vector<Piece> render_expr(const Expr& expr);
std::string print_expr(const Expr& expr);

/// Canonical line layout of a module: 4-space indents, one statement per
/// line, one blank line around top-level function definitions.
std::vector<RenderedLine> render_module(const ModuleAst& module);

/// Canonical text of a module, '\n' terminated (empty module → empty text).
std::string print_ast(const ModuleAst& module);

}  // namespace cogniview::syntax
