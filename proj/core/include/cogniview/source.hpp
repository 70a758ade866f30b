#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cogniview::syntax {

/// A source file held in memory together with the byte offset at which each
/// line starts. Lines are split on '\n'; the terminator belongs to the line it
/// ends, so concatenating every line reproduces `content()` exactly.
class SourceUnit {
 public:
  SourceUnit() : SourceUnit("<memory>", "") {}
  SourceUnit(std::string path, std::string content);

  /// Reads a file from disk; throws Error(IoError) when it cannot be read.
  static SourceUnit load(const std::filesystem::path& path);

  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] const std::string& content() const { return content_; }
  [[nodiscard]] const std::vector<std::size_t>& line_index() const { return line_index_; }

  /// Number of lines; a trailing '\n' does not open an extra empty line.
  [[nodiscard]] std::size_t line_count() const { return line_index_.size(); }
  /// 1-based line, including its '\n' terminator if present.
  [[nodiscard]] std::string_view line_with_terminator(std::size_t line) const;
  /// 1-based line without terminator.
  [[nodiscard]] std::string_view line(std::size_t line) const;

 private:
  std::string path_;
  std::string content_;
  std::vector<std::size_t> line_index_;
};

/// Returns the byte length of a valid UTF-8 sequence starting at `text[pos]`,
/// or 0 when the bytes there are not well-formed UTF-8.
std::size_t utf8_sequence_length(std::string_view text, std::size_t pos);

bool is_valid_utf8(std::string_view text);

/// Number of code points; invalid bytes each count as one.
std::size_t code_point_count(std::string_view text);

/// Splits a string into its code points (each element is one UTF-8 sequence).
std::vector<std::string> split_code_points(std::string_view text);

}  // namespace cogniview::syntax
