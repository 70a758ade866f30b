#include "cogniview/emit.hpp"

#include <algorithm>
#include <sstream>

#include "cogniview/parser.hpp"

namespace cogniview::emit {

using syntax::Comment;

nlohmann::ordered_json VirtualView::map_json() const {
  auto out = nlohmann::ordered_json::array();
  for (const ProvenanceEntry& p : provenance) {
    nlohmann::ordered_json j;
    j["view_line"] = p.view_line;
    j["orig_line"] = p.orig_line ? nlohmann::ordered_json(*p.orig_line) : nlohmann::ordered_json();
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

int width(const std::string& s) { return static_cast<int>(syntax::code_point_count(s)); }

int leading_spaces(const std::string& s) {
  return static_cast<int>(std::find_if(s.begin(), s.end(), [](char c) { return c != ' '; }) - s.begin());
}

struct OutLine {
  std::string text;
  std::optional<int> orig;
  bool over_limit = false;
};

}  // namespace

std::pair<std::vector<std::string>, bool> layout_comment(const Comment& comment, int indent, int limit) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string flat = pad + "#" + comment.text;
  if (width(flat) <= limit) return {{flat}, false};
  std::vector<std::string> words;
  std::istringstream in(comment.text);
  for (std::string w; in >> w;) words.push_back(w);
  std::vector<std::string> lines;
  std::string current;
  for (const std::string& w : words) {
    const std::string candidate = current.empty() ? pad + "# " + w : current + " " + w;
    if (!current.empty() && width(candidate) > limit) {
      lines.push_back(current);
      current = pad + "# " + w;
    } else {
      current = candidate;
    }
  }
  if (!current.empty()) lines.push_back(current);
  for (const std::string& line : lines) {
    if (width(line) > limit) return {{flat}, true};
  }
  return {lines, false};
}

VirtualView emit_view(const syntax::ModuleAst& optimized, const syntax::SourceUnit& original,
                      const analysis::CLConfig& cfg, const std::string& view_path) {
  const syntax::ParsedSource parsed = syntax::parse_source(original);
  const WrapResult wrapped = wrap_lines(optimized, cfg);

  // Anchor each comment to a statement line of the view.
  std::vector<std::vector<const Comment*>> before(wrapped.lines.size());
  std::vector<const Comment*> trailing;
  for (const Comment& c : parsed.comments) {
    std::optional<std::size_t> anchor;
    for (std::size_t i = 0; i < wrapped.lines.size(); ++i) {
      const ViewLine& line = wrapped.lines[i];
      if (line.continuation || !line.origin.valid() || line.origin.line < c.span.line) continue;
      if (!anchor || line.origin.line < wrapped.lines[*anchor].origin.line) anchor = i;
    }
    if (anchor) before[*anchor].push_back(&c);
    else trailing.push_back(&c);
  }

  std::vector<bool> flagged(wrapped.lines.size(), false);
  for (const UnbreakableLine& u : wrapped.unbreakable) flagged[static_cast<std::size_t>(u.view_line - 1)] = true;

  std::vector<OutLine> out;
  const auto add_comment = [&](const Comment& c, int indent) {
    auto [lines, over] = layout_comment(c, indent, cfg.line_limit);
    for (std::string& text : lines) out.push_back(OutLine{std::move(text), c.span.line, over});
  };
  for (std::size_t i = 0; i < wrapped.lines.size(); ++i) {
    const ViewLine& line = wrapped.lines[i];
    for (const Comment* c : before[i]) add_comment(*c, std::min(c->span.col - 1, leading_spaces(line.text)));
    std::optional<int> orig;
    if (line.origin.valid()) orig = line.origin.line;
    out.push_back(OutLine{line.text, orig, flagged[i]});
  }
  for (const Comment* c : trailing) add_comment(*c, 0);

  VirtualView view;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    view.text += out[i].text;
    view.text += '\n';
    view.provenance.push_back(ProvenanceEntry{number, out[i].orig});
    if (out[i].over_limit) view.unbreakable.push_back(UnbreakableLine{number, width(out[i].text)});
  }
  view.report_before = analysis::cl_report(parsed.module, original, cfg);
  const syntax::SourceUnit view_source(view_path, view.text);
  view.report_after = analysis::cl_report(syntax::parse_source(view_source).module, view_source, cfg);
  return view;
}

}  // namespace cogniview::emit
