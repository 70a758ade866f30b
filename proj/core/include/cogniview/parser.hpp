#pragma once

#include <string_view>
#include <vector>

#include "cogniview/ast.hpp"
#include "cogniview/lexer.hpp"
#include "cogniview/source.hpp"

namespace cogniview::syntax {

/// Statement/expression nesting beyond this depth is rejected with
/// NestingTooDeep so that recursive passes stay within the native stack.
inline constexpr int kMaxSyntaxDepth = 128;

/// Builds a ModuleAst from a token stream produced by `tokenize` and runs the
/// static checks (return/break placement, duplicate names, nested-function
/// capture). Throws Error on the first problem.
ModuleAst parse(const std::vector<Token>& tokens);

struct ParsedSource {
  ModuleAst module;
  std::vector<Comment> comments;
};

ParsedSource parse_source(const SourceUnit& source);
ModuleAst parse_text(std::string_view text);

/// Re-runs the static checks on an AST built or rewritten in memory.
void check_static(const ModuleAst& module);

/// Decodes the body of a quoted string lexeme ("..." or '...').
std::string decode_string_literal(std::string_view lexeme);

}  // namespace cogniview::syntax
