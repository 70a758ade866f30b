#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "cogniview/emit.hpp"
#include "cogniview/optimize.hpp"
#include "cogniview/parser.hpp"
#include "cogniview/printer.hpp"
#include "cogniview/wrap.hpp"
#include "oracles/program_gen.hpp"
#include "oracles/wrap_oracle.hpp"
#include "support.hpp"

namespace {

using namespace cogniview;
using namespace cogniview::emit;
using cogniview::analysis::CLConfig;
using cogniview::syntax::ModuleAst;
using cogniview::syntax::parse_text;
using cogniview::syntax::SourceUnit;

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

VirtualView view_of(const std::string& text, const CLConfig& cfg = {}) {
  const SourceUnit src("<t>", text);
  const ModuleAst m = syntax::parse_source(src).module;
  return emit_view(refactor::optimize(m, cfg).module, src, cfg);
}

// --- wrap_line ---------------------------------------------------------------

TEST(Wrap, WorkedExample) {
  const ModuleAst m = parse_text("result = alpha * beta + gamma * delta + epsilon\n");
  const auto lines = syntax::render_module(m);
  const auto out = wrap_line(lines.at(0), 40);
  ASSERT_TRUE(out.has_value());
  ASSERT_EQ(out->size(), 2U);
  EXPECT_EQ((*out)[0], "result = (alpha * beta");
  EXPECT_EQ((*out)[1], "    + gamma * delta + epsilon)");
  // Independent character counts of the two frozen lines.
  EXPECT_EQ(cvtest::oracle::cells((*out)[0]), 22);
  EXPECT_EQ(cvtest::oracle::cells((*out)[1]), 30);
}

TEST(Wrap, ShortLineUnchanged) {
  const auto out = wrap_line(syntax::render_module(parse_text("x = 1\n")).at(0), 40);
  EXPECT_EQ(*out, std::vector<std::string>{"x = 1"});
}

TEST(Wrap, LongIdentifierIsUnbreakable) {
  const std::string id(45, 'q');
  const WrapResult r = wrap_lines(parse_text("x = " + id + " + 1\n"), CLConfig{});
  ASSERT_EQ(r.unbreakable.size(), 1U);
  EXPECT_EQ(r.unbreakable[0], (UnbreakableLine{1, 53}));
  EXPECT_EQ(r.lines.at(0).text, "x = " + id + " + 1");
}

TEST(Wrap, StringsAreNeverSplit) {
  const std::string s(30, 's');
  const WrapResult r = wrap_lines(parse_text("print(\"" + s + "\", \"" + s + "\")\n"), CLConfig{});
  ASSERT_EQ(r.lines.size(), 2U);
  EXPECT_EQ(r.lines[0].text, "print(\"" + s + "\",");
  EXPECT_EQ(r.lines[1].text, "    \"" + s + "\")");
  EXPECT_TRUE(r.unbreakable.empty());
  const WrapResult tight = wrap_lines(parse_text("print(\"" + std::string(45, 's') + "\")\n"), CLConfig{});
  ASSERT_EQ(tight.unbreakable.size(), 1U);
  EXPECT_EQ(tight.lines.size(), 1U);
  EXPECT_EQ(parse_text(r.text()), parse_text("print(\"" + s + "\", \"" + s + "\")\n"));
}

TEST(Wrap, CallArgumentsBreakAfterCommas) {
  const ModuleAst m = parse_text("total = combine(first_value, second_value, third_value)\n");
  const WrapResult r = wrap_lines(m, CLConfig{});
  EXPECT_TRUE(r.unbreakable.empty());
  ASSERT_GE(r.lines.size(), 2U);
  for (const auto& l : r.lines) EXPECT_LE(cvtest::oracle::cells(l.text), 40) << l.text;
  EXPECT_TRUE(r.lines[1].continuation);
  EXPECT_EQ(parse_text(r.text()), m);
}

TEST(Wrap, ConditionGetsParenthesized) {
  const ModuleAst m = parse_text(
      "def f(alpha, beta, gamma):\n    if alpha > beta and beta > gamma or gamma == 0:\n        return 1\n"
      "    return 0\n");
  const WrapResult r = wrap_lines(m, CLConfig{});
  EXPECT_TRUE(r.unbreakable.empty());
  EXPECT_EQ(r.lines[1].text.substr(0, 8), "    if (");
  EXPECT_EQ(parse_text(r.text()), m);
}

TEST(Wrap, MatchesBruteForceOracleOnCorpusAndGeneratedLines) {
  int compared = 0;
  auto compare = [&](const ModuleAst& m, int limit) {
    for (const auto& line : syntax::render_module(m)) {
      if (line.pieces.empty()) continue;
      const auto oracle = cvtest::oracle::brute_force_wrap(line, limit);
      if (oracle.verdict == cvtest::oracle::WrapVerdict::TooLarge) continue;
      const auto got = wrap_line(line, limit);
      if (oracle.verdict == cvtest::oracle::WrapVerdict::NoLayout) {
        EXPECT_FALSE(got.has_value()) << syntax::join_pieces(line.pieces);
      } else {
        ASSERT_TRUE(got.has_value()) << syntax::join_pieces(line.pieces);
        EXPECT_EQ(*got, oracle.lines) << syntax::join_pieces(line.pieces);
      }
      ++compared;
    }
  };
  for (const auto& path : cvtest::corpus_files()) {
    const ModuleAst m = cvtest::parse_file(path);
    for (const int limit : {20, 30, 40}) compare(m, limit);
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    cvtest::gen::ProgramGen gen(seed);
    ModuleAst m;
    m.items.push_back(syntax::make_stmt(syntax::Assign{"value", std::nullopt, gen.expr({"alpha", "b"}, 4)}));
    for (const int limit : {16, 24, 40}) compare(m, limit);
  }
  EXPECT_GT(compared, 1000);
}

TEST(Wrap, ReparseAndBudgetOnGeneratedModules) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const ModuleAst m = cvtest::gen::ProgramGen(seed).module();
    for (const int limit : {20, 40}) {
      CLConfig cfg;
      cfg.line_limit = limit;
      const WrapResult r = wrap_lines(m, cfg);
      EXPECT_EQ(parse_text(r.text()), m) << "seed " << seed << "\n" << r.text();
      std::set<int> flagged;
      for (const auto& u : r.unbreakable) flagged.insert(u.view_line);
      for (std::size_t i = 0; i < r.lines.size(); ++i) {
        if (flagged.count(static_cast<int>(i + 1)) != 0) continue;
        EXPECT_LE(cvtest::oracle::cells(r.lines[i].text), limit) << r.lines[i].text;
      }
    }
  }
}

// --- emit_view ---------------------------------------------------------------

TEST(Emit, PassModule) {
  const VirtualView v = view_of("pass\n");
  EXPECT_EQ(v.text, "pass\n");
  EXPECT_EQ(v.report_before.composite_score, Rational(0));
  EXPECT_EQ(v.report_after.composite_score, Rational(0));
  ASSERT_EQ(v.provenance.size(), 1U);
  EXPECT_EQ(v.provenance[0], (ProvenanceEntry{1, 1}));
}

TEST(Emit, NestedGuardLowersNesting) {
  const SourceUnit src = cvtest::load(cvtest::corpus_file("guard_worked.mpy"));
  const ModuleAst m = syntax::parse_source(src).module;
  const VirtualView v = emit_view(refactor::optimize(m, {}).module, src, {});
  EXPECT_LT(v.report_after.max_nesting(), v.report_before.max_nesting());
  EXPECT_EQ(v.report_before.max_nesting(), 2);
  EXPECT_EQ(v.report_after.max_nesting(), 1);
}

TEST(Emit, OverlongLineOnlyDefect) {
  const SourceUnit src = cvtest::load(cvtest::corpus_file("wrap_worked.mpy"));
  const ModuleAst m = syntax::parse_source(src).module;
  const auto r = refactor::optimize(m, {});
  EXPECT_TRUE(r.trace.entries.empty());
  const VirtualView v = emit_view(r.module, src, {});
  EXPECT_EQ(v.report_before.composite_score, Rational(1));
  EXPECT_EQ(v.report_after.composite_score, Rational(0));
  const auto lines = split_lines(v.text);
  ASSERT_GE(lines.size(), 7U);
  EXPECT_EQ(lines[5], "result = (alpha * beta");
  EXPECT_EQ(lines[6], "    + gamma * delta + epsilon)");
  EXPECT_EQ(v.provenance[5].orig_line, 6);
  EXPECT_EQ(v.provenance[6].orig_line, 6);
}

TEST(Emit, CommentsAreKeptAboveTheirStatement) {
  const VirtualView v = view_of("x = 1\n# explain y\ny = 2  # trailing\n");
  EXPECT_EQ(v.text, "x = 1\n# explain y\n# trailing\ny = 2\n");
  EXPECT_EQ(parse_text(v.text), parse_text("x = 1\ny = 2\n"));
}

TEST(Emit, LongCommentsWrapByWord) {
  const syntax::Comment c{Span{1, 1, 1, 2}, " one two three four five six seven eight nine ten"};
  const auto [lines, over] = layout_comment(c, 4, 24);
  EXPECT_FALSE(over);
  for (const auto& l : lines) {
    EXPECT_LE(cvtest::oracle::cells(l), 24) << l;
    EXPECT_EQ(l.substr(0, 6), "    # ");
  }
  const syntax::Comment huge{Span{1, 1, 1, 2}, " " + std::string(50, 'w')};
  EXPECT_TRUE(layout_comment(huge, 0, 40).second);
}

TEST(Emit, MapJson) {
  const VirtualView v = view_of("def f():\n    return 1\n\nprint(f())\n");
  const auto j = v.map_json();
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), v.provenance.size());
  EXPECT_EQ(j[0]["view_line"], 1);
  EXPECT_EQ(j[0]["orig_line"], 1);
  EXPECT_TRUE(j[2]["orig_line"].is_null());
}

TEST(Emit, LawsOnCorpus) {
  const CLConfig cfg;
  for (const auto& path : cvtest::corpus_files()) {
    const SourceUnit src = cvtest::load(path);
    const auto parsed = syntax::parse_source(src);
    const auto opt = refactor::optimize(parsed.module, cfg);
    const VirtualView v = emit_view(opt.module, src, cfg);
    const auto lines = split_lines(v.text);

    // Re-parse law.
    EXPECT_EQ(parse_text(v.text), opt.module) << path;
    // Budget law.
    std::set<int> flagged;
    for (const auto& u : v.unbreakable) flagged.insert(u.view_line);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (flagged.count(static_cast<int>(i + 1)) == 0) {
        EXPECT_LE(cvtest::oracle::cells(lines[i]), cfg.line_limit) << path << ":" << i + 1;
      }
    }
    // Provenance totality.
    ASSERT_EQ(v.provenance.size(), lines.size()) << path;
    std::set<int> referenced;
    for (std::size_t i = 0; i < v.provenance.size(); ++i) {
      EXPECT_EQ(v.provenance[i].view_line, static_cast<int>(i + 1));
      if (v.provenance[i].orig_line) referenced.insert(*v.provenance[i].orig_line);
      if (!lines[i].empty()) EXPECT_TRUE(v.provenance[i].orig_line.has_value()) << path << ":" << i + 1;
    }
    if (opt.trace.applied_count() == 0) {
      // Nothing moved: every statement line of the original is referenced.
      syntax::walk(parsed.module, [&](const syntax::StmtPath&, const syntax::Stmt& s) {
        EXPECT_EQ(referenced.count(s.span.line), 1U) << path << " line " << s.span.line;
      });
    }
    // Score law.
    EXPECT_LE(v.report_after.composite_score, v.report_before.composite_score) << path;
    if (v.report_after.composite_score == v.report_before.composite_score) {
      EXPECT_EQ(opt.trace.applied_count(), 0U) << path;
      EXPECT_TRUE(v.report_before.overlong_lines.empty() || !v.unbreakable.empty()) << path;
    }
  }
}

}  // namespace
