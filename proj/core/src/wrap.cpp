#include "cogniview/wrap.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "cogniview/source.hpp"

namespace cogniview::emit {

using syntax::BreakKind;
using syntax::Piece;
using syntax::RenderedLine;

std::string WrapResult::text() const {
  std::string out;
  for (const ViewLine& line : lines) {
    out += line.text;
    out += '\n';
  }
  return out;
}

namespace {

constexpr int kInfinite = std::numeric_limits<int>::max() / 2;
constexpr int kContinuationIndent = 4;

int width(const std::string& text) { return static_cast<int>(syntax::code_point_count(text)); }

std::vector<Piece> with_target_parens(const RenderedLine& line) {
  std::vector<Piece> pieces = line.pieces;
  if (!line.wrap_target || line.target_bracketed) return pieces;
  const auto [begin, end] = *line.wrap_target;
  for (std::size_t i = begin; i < end; ++i) ++pieces[i].depth;
  const bool space = pieces[begin].space_before;
  pieces[begin].space_before = false;
  pieces.insert(pieces.begin() + static_cast<std::ptrdiff_t>(end), Piece{")", false, 0, BreakKind::None, 0});
  pieces.insert(pieces.begin() + static_cast<std::ptrdiff_t>(begin), Piece{"(", space, 0, BreakKind::None, 0});
  return pieces;
}

/// A break position `p` means "a new line starts at piece p".
struct BreakPoint {
  std::size_t piece;
  int depth;
  int tier;
};

std::vector<BreakPoint> break_points(const std::vector<Piece>& pieces) {
  std::vector<BreakPoint> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (p.depth < 1) continue;
    if (p.brk == BreakKind::BeforeOperator && i > 0) out.push_back({i, p.depth, p.tier});
    if (p.brk == BreakKind::AfterComma && i + 1 < pieces.size()) out.push_back({i + 1, p.depth, p.tier});
  }
  return out;
}

class Layout {
 public:
  Layout(const std::vector<Piece>& pieces, int indent, std::vector<std::size_t> points)
      : pieces_(pieces), indent_(indent), points_(std::move(points)) {
    points_.insert(points_.begin(), 0);
    const std::size_t n = points_.size();
    seg_.assign(n, std::vector<int>(n + 1, kInfinite));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b <= n; ++b) {
        const std::size_t end = b == n ? pieces_.size() : points_[b];
        const int lead = a == 0 ? indent_ : indent_ + kContinuationIndent;
        seg_[a][b] = lead + width(syntax::join_pieces(pieces_, points_[a], end));
      }
    }
  }

  /// Breaks (piece indices) of the best layout within `limit`, if any.
  std::optional<std::vector<std::size_t>> solve(int limit) const {
    const int lines = min_lines(limit)[0];
    if (lines >= kInfinite) return std::nullopt;
    std::set<int> widths;
    for (const auto& row : seg_) {
      for (const int w : row) {
        if (w <= limit) widths.insert(w);
      }
    }
    int best = limit;
    for (const int w : widths) {
      if (min_lines(w)[0] == lines) {
        best = w;
        break;
      }
    }
    const std::vector<int> f = min_lines(best);
    std::vector<std::size_t> breaks;
    const std::size_t n = points_.size();
    std::size_t cur = 0;
    for (int remaining = lines; remaining > 1; --remaining) {
      for (std::size_t next = cur + 1; next < n; ++next) {
        if (seg_[cur][next] <= best && f[next] == remaining - 1) {
          breaks.push_back(points_[next]);
          cur = next;
          break;
        }
      }
    }
    return breaks;
  }

  std::vector<std::string> render(const std::vector<std::size_t>& breaks) const {
    std::vector<std::string> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= breaks.size(); ++i) {
      const std::size_t end = i < breaks.size() ? breaks[i] : pieces_.size();
      const int lead = i == 0 ? indent_ : indent_ + kContinuationIndent;
      out.push_back(std::string(static_cast<std::size_t>(lead), ' ') +
                    syntax::join_pieces(pieces_, begin, end));
      begin = end;
    }
    return out;
  }

 private:
  // f[a] = fewest lines for the suffix starting at point a, widths ≤ limit.
  std::vector<int> min_lines(int limit) const {
    const std::size_t n = points_.size();
    std::vector<int> f(n, kInfinite);
    for (std::size_t a = n; a-- > 0;) {
      if (seg_[a][n] <= limit) {
        f[a] = 1;
        continue;
      }
      for (std::size_t b = a + 1; b < n; ++b) {
        if (seg_[a][b] <= limit && f[b] < kInfinite) f[a] = std::min(f[a], f[b] + 1);
      }
    }
    return f;
  }

  const std::vector<Piece>& pieces_;
  int indent_;
  std::vector<std::size_t> points_;
  std::vector<std::vector<int>> seg_;  // seg_[a][b]: width of points a..b (b == n: to the end)
};

}  // namespace

std::optional<std::vector<std::string>> wrap_line(const RenderedLine& line, int limit) {
  const std::string flat = std::string(static_cast<std::size_t>(line.indent), ' ') + syntax::join_pieces(line.pieces);
  if (width(flat) <= limit) return std::vector<std::string>{flat};
  const std::vector<Piece> pieces = with_target_parens(line);
  const std::vector<BreakPoint> all = break_points(pieces);
  std::set<std::pair<int, int>> classes;
  for (const BreakPoint& b : all) classes.insert({b.depth, b.tier});
  for (const auto& cls : classes) {
    std::vector<std::size_t> allowed;
    for (const BreakPoint& b : all) {
      if (std::make_pair(b.depth, b.tier) <= cls) allowed.push_back(b.piece);
    }
    const Layout layout(pieces, line.indent, allowed);
    if (auto breaks = layout.solve(limit)) return layout.render(*breaks);
  }
  return std::nullopt;
}

WrapResult wrap_lines(const syntax::ModuleAst& module, const analysis::CLConfig& cfg) {
  WrapResult result;
  for (const RenderedLine& line : syntax::render_module(module)) {
    if (line.pieces.empty()) {
      result.lines.push_back(ViewLine{});
      continue;
    }
    if (auto parts = wrap_line(line, cfg.line_limit)) {
      for (std::size_t i = 0; i < parts->size(); ++i) {
        result.lines.push_back(ViewLine{(*parts)[i], line.origin, i == 0 ? line.stmt : nullptr, i > 0});
      }
      continue;
    }
    std::string flat = std::string(static_cast<std::size_t>(line.indent), ' ') + syntax::join_pieces(line.pieces);
    const int length = width(flat);
    result.lines.push_back(ViewLine{std::move(flat), line.origin, line.stmt, false});
    result.unbreakable.push_back({static_cast<int>(result.lines.size()), length});
  }
  return result;
}

}  // namespace cogniview::emit
