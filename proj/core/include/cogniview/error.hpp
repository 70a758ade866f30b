#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cogniview {

/// Source position. Lines and columns are 1-based; `end_col` is exclusive.
/// A default-constructed span (line 0) means "no source position", which is
/// what synthesized nodes carry when nothing better is known.
struct Span {
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  [[nodiscard]] bool valid() const { return line > 0; }

  static Span cover(const Span& first, const Span& last) {
    return Span{first.line, first.col, last.end_line, last.end_col};
  }

  friend bool operator==(const Span&, const Span&) = default;
};

enum class ErrorKind {
  // lexical
  TabCharacter,
  BadIndent,
  UnterminatedString,
  UnknownChar,
  InvalidUtf8,
  BadEscape,
  IntLiteralOverflow,
  // syntactic / static
  UnexpectedToken,
  ReturnOutsideFunction,
  BreakOutsideLoop,
  DuplicateParam,
  DuplicateFunction,
  ReservedName,
  NestedCaptureViolation,
  NestingTooDeep,
  // analysis
  UnresolvedCallee,
  // refactoring
  StaleCandidate,
  NameCollisionExhausted,
  // front end
  IoError,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Structured error carrying a kind, a free-form detail and a position.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail, Span span = {});

  [[nodiscard]] ErrorKind kind() const { return kind_; }
  [[nodiscard]] const std::string& detail() const { return detail_; }
  [[nodiscard]] const Span& span() const { return span_; }

 private:
  ErrorKind kind_;
  std::string detail_;
  Span span_;
};

}  // namespace cogniview
