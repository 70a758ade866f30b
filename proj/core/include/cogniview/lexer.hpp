#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cogniview/error.hpp"
#include "cogniview/source.hpp"

namespace cogniview::syntax {

enum class TokenKind { Ident, Int, String, Keyword, Op, Newline, Indent, Dedent, Eof };

std::string_view to_string(TokenKind kind);

/// One lexical token. `lexeme` is the exact source text (quotes included for
/// strings); layout tokens (NEWLINE/INDENT/DEDENT/EOF) have an empty lexeme
/// and a zero-width span.
struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string lexeme;
  Span span;

  [[nodiscard]] bool is(TokenKind k, std::string_view text) const {
    return kind == k && lexeme == text;
  }
};

/// A `#` comment. `text` excludes the leading '#'.
struct Comment {
  Span span;
  std::string text;
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<Comment> comments;
};

inline constexpr int kIndentWidth = 4;

/// Splits MiniPy source into tokens. NEWLINE is suppressed inside unclosed
/// `(` / `[`; indentation is measured in multiples of four spaces; comments are
/// dropped from the stream and returned separately. Throws Error on the first
/// lexical error.
LexResult tokenize(const SourceUnit& source);

bool is_keyword(std::string_view word);

}  // namespace cogniview::syntax
