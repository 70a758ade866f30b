#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cogniview/printer.hpp"

namespace cvtest::oracle {

/// Code points, counted as bytes that are not UTF-8 continuation bytes.
inline int cells(const std::string& text) {
  int n = 0;
  for (const unsigned char c : text) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

struct Tok {
  std::string text;
  bool space = false;
  int depth = 0;
  cogniview::syntax::BreakKind brk = cogniview::syntax::BreakKind::None;
  int tier = 0;
};

inline std::vector<Tok> oracle_tokens(const cogniview::syntax::RenderedLine& line) {
  std::vector<Tok> toks;
  for (const auto& p : line.pieces) toks.push_back({p.text, p.space_before, p.depth, p.brk, p.tier});
  if (line.wrap_target && !line.target_bracketed) {
    const auto [b, e] = *line.wrap_target;
    for (std::size_t i = b; i < e; ++i) toks[i].depth += 1;
    const bool space = toks[b].space;
    toks[b].space = false;
    toks.insert(toks.begin() + static_cast<std::ptrdiff_t>(e), Tok{")", false, 0, {}, 0});
    toks.insert(toks.begin() + static_cast<std::ptrdiff_t>(b), Tok{"(", space, 0, {}, 0});
  }
  return toks;
}

inline std::string join(const std::vector<Tok>& toks, std::size_t b, std::size_t e) {
  std::string s;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b && toks[i].space) s += ' ';
    s += toks[i].text;
  }
  return s;
}

enum class WrapVerdict { Fits, Wrapped, NoLayout, TooLarge };

struct OracleWrap {
  WrapVerdict verdict = WrapVerdict::NoLayout;
  std::vector<std::string> lines;
};

/// Exhaustive search over every subset of the permitted breaks, class by
/// class; picks fewest lines, then narrowest widest line, then the
/// lexicographically smallest break positions. Gives up (TooLarge) when a
/// class has more than `max_points` breaks.
inline OracleWrap brute_force_wrap(const cogniview::syntax::RenderedLine& line, int limit,
                                   std::size_t max_points = 16) {
  using cogniview::syntax::BreakKind;
  const std::string pad(static_cast<std::size_t>(line.indent), ' ');
  std::vector<Tok> plain;
  for (const auto& p : line.pieces) plain.push_back({p.text, p.space_before, p.depth, p.brk, p.tier});
  const std::string flat = pad + join(plain, 0, plain.size());
  if (cells(flat) <= limit) return {WrapVerdict::Fits, {flat}};

  const std::vector<Tok> toks = oracle_tokens(line);
  std::vector<std::tuple<std::size_t, int, int>> points;  // start piece, depth, tier
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].depth < 1) continue;
    if (toks[i].brk == BreakKind::BeforeOperator && i > 0) points.emplace_back(i, toks[i].depth, toks[i].tier);
    if (toks[i].brk == BreakKind::AfterComma && i + 1 < toks.size())
      points.emplace_back(i + 1, toks[i].depth, toks[i].tier);
  }
  std::vector<std::pair<int, int>> classes;
  for (const auto& [p, d, t] : points) classes.emplace_back(d, t);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  for (const auto& cls : classes) {
    std::vector<std::size_t> allowed;
    for (const auto& [p, d, t] : points) {
      if (std::make_pair(d, t) <= cls) allowed.push_back(p);
    }
    if (allowed.size() > max_points) return {WrapVerdict::TooLarge, {}};
    std::optional<std::tuple<std::size_t, int, std::vector<std::size_t>>> best;
    std::vector<std::string> best_lines;
    for (std::size_t mask = 1; mask < (std::size_t{1} << allowed.size()); ++mask) {
      std::vector<std::size_t> breaks;
      for (std::size_t k = 0; k < allowed.size(); ++k) {
        if ((mask >> k) & 1U) breaks.push_back(allowed[k]);
      }
      std::vector<std::string> lines;
      std::size_t begin = 0;
      int widest = 0;
      bool ok = true;
      for (std::size_t k = 0; k <= breaks.size() && ok; ++k) {
        const std::size_t end = k < breaks.size() ? breaks[k] : toks.size();
        const std::string text =
            std::string(static_cast<std::size_t>(line.indent + (k == 0 ? 0 : 4)), ' ') + join(toks, begin, end);
        widest = std::max(widest, cells(text));
        ok = cells(text) <= limit;
        lines.push_back(text);
        begin = end;
      }
      if (!ok) continue;
      auto key = std::make_tuple(lines.size(), widest, breaks);
      if (!best || key < *best) {
        best = key;
        best_lines = lines;
      }
    }
    if (best) return {WrapVerdict::Wrapped, best_lines};
  }
  return {WrapVerdict::NoLayout, {}};
}

}  // namespace cvtest::oracle
