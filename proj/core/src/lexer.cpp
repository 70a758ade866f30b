#include "cogniview/lexer.hpp"

#include <array>
#include <charconv>
#include <cstdint>

namespace cogniview::syntax {
namespace {

constexpr std::array kKeywords{
    "def", "if", "elif", "else", "while", "for", "in", "return", "break",
    "continue", "pass", "and", "or", "not", "True", "False", "None",
};

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
 public:
  explicit Lexer(const SourceUnit& source) : source_(source) {}

  LexResult run() {
    check_encoding();
    for (std::size_t n = 1; n <= source_.line_count(); ++n) lex_line(static_cast<int>(n));
    const int last_line = static_cast<int>(source_.line_count());
    const int end_col = last_line > 0
                            ? static_cast<int>(source_.line(static_cast<std::size_t>(last_line)).size()) + 1
                            : 1;
    if (pending_newline_) emit(TokenKind::Newline, "", point(last_line, end_col));
    const Span eof_at = point(last_line > 0 ? last_line : 1, last_line > 0 ? end_col : 1);
    while (indents_.size() > 1) {
      indents_.pop_back();
      emit(TokenKind::Dedent, "", eof_at);
    }
    emit(TokenKind::Eof, "", eof_at);
    return std::move(result_);
  }

 private:
  static Span point(int line, int col) { return Span{line, col, line, col}; }
  static Span range(int line, std::size_t begin, std::size_t end) {
    return Span{line, static_cast<int>(begin) + 1, line, static_cast<int>(end) + 1};
  }

  void emit(TokenKind kind, std::string lexeme, Span span) {
    result_.tokens.push_back(Token{kind, std::move(lexeme), span});
  }

  void check_encoding() {
    const std::string& text = source_.content();
    int line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < text.size();) {
      const std::size_t len = utf8_sequence_length(text, i);
      if (len == 0) {
        throw Error(ErrorKind::InvalidUtf8, "malformed UTF-8 byte",
                    range(line, i - line_start, i - line_start + 1));
      }
      if (text[i] == '\t') {
        throw Error(ErrorKind::TabCharacter, "tab characters are not allowed",
                    range(line, i - line_start, i - line_start + 1));
      }
      if (text[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
      i += len;
    }
  }

  void lex_line(int line_no) {
    const std::string_view line = source_.line(static_cast<std::size_t>(line_no));
    std::size_t pos = 0;
    if (depth_ == 0) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos == line.size()) return;
      if (line[pos] == '#') {
        record_comment(line_no, line, pos);
        return;
      }
      indent_to(line_no, pos);
    }
    while (pos < line.size()) {
      const char c = line[pos];
      if (c == ' ') {
        ++pos;
      } else if (c == '#') {
        record_comment(line_no, line, pos);
        break;
      } else if (is_ident_start(c)) {
        std::size_t end = pos;
        while (end < line.size() && is_ident_char(line[end])) ++end;
        std::string word(line.substr(pos, end - pos));
        const TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Ident;
        emit(kind, std::move(word), range(line_no, pos, end));
        pos = end;
      } else if (is_digit(c)) {
        std::size_t end = pos;
        while (end < line.size() && is_digit(line[end])) ++end;
        const std::string_view digits = line.substr(pos, end - pos);
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc()) {
          throw Error(ErrorKind::IntLiteralOverflow,
                      "integer literal does not fit in 64 bits: " + std::string(digits),
                      range(line_no, pos, end));
        }
        emit(TokenKind::Int, std::string(digits), range(line_no, pos, end));
        pos = end;
      } else if (c == '"' || c == '\'') {
        pos = lex_string(line_no, line, pos);
      } else {
        pos = lex_operator(line_no, line, pos);
      }
      pending_newline_ = true;
    }
    if (depth_ == 0 && pending_newline_) {
      const int col = static_cast<int>(line.size()) + 1;
      emit(TokenKind::Newline, "", point(line_no, col));
      pending_newline_ = false;
    }
  }

  void indent_to(int line_no, std::size_t width) {
    const Span at = range(line_no, 0, width);
    if (width % kIndentWidth != 0) {
      throw Error(ErrorKind::BadIndent,
                  "indentation of " + std::to_string(width) + " spaces is not a multiple of 4", at);
    }
    if (width > indents_.back()) {
      indents_.push_back(width);
      emit(TokenKind::Indent, "", point(line_no, 1));
      return;
    }
    while (width < indents_.back()) {
      indents_.pop_back();
      emit(TokenKind::Dedent, "", point(line_no, 1));
    }
    if (width != indents_.back()) {
      throw Error(ErrorKind::BadIndent, "dedent to a level that was never opened", at);
    }
  }

  void record_comment(int line_no, std::string_view line, std::size_t pos) {
    result_.comments.push_back(
        Comment{range(line_no, pos, line.size()), std::string(line.substr(pos + 1))});
  }

  std::size_t lex_string(int line_no, std::string_view line, std::size_t start) {
    const char quote = line[start];
    std::size_t pos = start + 1;
    while (pos < line.size()) {
      const char c = line[pos];
      if (c == quote) {
        emit(TokenKind::String, std::string(line.substr(start, pos + 1 - start)),
             range(line_no, start, pos + 1));
        return pos + 1;
      }
      if (c == '\\') {
        if (pos + 1 >= line.size()) break;
        const char e = line[pos + 1];
        if (e != '\\' && e != '"' && e != '\'' && e != 'n') {
          throw Error(ErrorKind::BadEscape, std::string("unknown escape \\") + e,
                      range(line_no, pos, pos + 2));
        }
        pos += 2;
        continue;
      }
      if (static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
        throw Error(ErrorKind::UnknownChar, "control character in string literal",
                    range(line_no, pos, pos + 1));
      }
      pos += utf8_sequence_length(line, pos);
    }
    throw Error(ErrorKind::UnterminatedString, "string literal is not closed on its line",
                range(line_no, start, line.size()));
  }

  std::size_t lex_operator(int line_no, std::string_view line, std::size_t pos) {
    static constexpr std::array kTwo{"//", "==", "!=", "<=", ">="};
    for (const char* op : kTwo) {
      if (line.substr(pos, 2) == op) {
        emit(TokenKind::Op, op, range(line_no, pos, pos + 2));
        return pos + 2;
      }
    }
    const char c = line[pos];
    static constexpr std::string_view kOne = "+-*%<>=()[],:";
    if (kOne.find(c) == std::string_view::npos) {
      std::size_t len = utf8_sequence_length(line, pos);
      if (len == 0) len = 1;
      throw Error(ErrorKind::UnknownChar,
                  "unexpected character '" + std::string(line.substr(pos, len)) + "'",
                  range(line_no, pos, pos + len));
    }
    if (c == '(' || c == '[') ++depth_;
    if ((c == ')' || c == ']') && depth_ > 0) --depth_;
    emit(TokenKind::Op, std::string(1, c), range(line_no, pos, pos + 1));
    return pos + 1;
  }

  const SourceUnit& source_;
  LexResult result_;
  std::vector<std::size_t> indents_{0};
  int depth_ = 0;
  bool pending_newline_ = false;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "IDENT";
    case TokenKind::Int: return "INT";
    case TokenKind::String: return "STRING";
    case TokenKind::Keyword: return "KEYWORD";
    case TokenKind::Op: return "OP";
    case TokenKind::Newline: return "NEWLINE";
    case TokenKind::Indent: return "INDENT";
    case TokenKind::Dedent: return "DEDENT";
    case TokenKind::Eof: return "EOF";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  for (const char* kw : kKeywords) {
    if (word == kw) return true;
  }
  return false;
}

LexResult tokenize(const SourceUnit& source) { return Lexer(source).run(); }

}  // namespace cogniview::syntax
