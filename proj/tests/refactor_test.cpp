#include <gtest/gtest.h>

#include <algorithm>

#include "cogniview/equivalence.hpp"
#include "cogniview/liveness.hpp"
#include "cogniview/metrics.hpp"
#include "cogniview/optimize.hpp"
#include "cogniview/parser.hpp"
#include "cogniview/printer.hpp"
#include "cogniview/refactor.hpp"
#include "support.hpp"

namespace {

using namespace cogniview;
using namespace cogniview::refactor;
using cogniview::analysis::CLConfig;
using cogniview::syntax::ModuleAst;
using cogniview::syntax::parse_text;
using cogniview::syntax::print_ast;

const char* const kNestedGuard =
    "def g(a, b):\n"
    "    if a > 0:\n"
    "        if b > 0:\n"
    "            return a + b\n"
    "        else:\n"
    "            return a\n"
    "    else:\n"
    "        return 0\n";

std::vector<TransformationCandidate> of_kind(const std::vector<TransformationCandidate>& all, TransformKind k) {
  std::vector<TransformationCandidate> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out), [&](const auto& c) { return c.kind == k; });
  return out;
}

int max_nesting_of(const ModuleAst& m, const std::string& name) {
  for (const auto& p : analysis::nesting_profile(m)) {
    if (p.name == name) return p.max_nesting;
  }
  return -1;
}

bool equivalent_exhaustive(const ModuleAst& a, const ModuleAst& b) {
  return interp::check_equivalence_exhaustive(a, b).equivalent;
}

// --- enumerate_candidates ----------------------------------------------------

TEST(Candidates, GuardClauseOnTailIfElse) {
  const auto cands = find_sites(parse_text(kNestedGuard));
  EXPECT_EQ(of_kind(cands, TransformKind::GuardClause).size(), 1U);
}

TEST(Candidates, PassHasNone) { EXPECT_TRUE(enumerate_candidates(parse_text("pass\n"), CLConfig{}).empty()); }

TEST(Candidates, SplitWebsOnReusedTemporary) {
  const ModuleAst m = parse_text(
      "def f1():\n    return 1\n\ndef f2():\n    return 2\n\ndef main():\n    t = f1()\n    print(t)\n"
      "    t = f2()\n    print(t)\n");
  const auto webs = of_kind(find_sites(m), TransformKind::SplitWebs);
  ASSERT_EQ(webs.size(), 1U);
  EXPECT_EQ(webs[0].detail, "t");
}

TEST(Candidates, NoSplitWhenDefinitionsMerge) {
  const ModuleAst m = parse_text("def f(c):\n    x = 1\n    if c:\n        x = 2\n    return x\n");
  EXPECT_TRUE(of_kind(find_sites(m), TransformKind::SplitWebs).empty());
}

TEST(Candidates, GuardClauseNeedsTailPosition) {
  const ModuleAst m = parse_text(
      "def f(a):\n    if a:\n        return 1\n    else:\n        return 2\n    print(3)\n");
  EXPECT_TRUE(of_kind(find_sites(m), TransformKind::GuardClause).empty());
}

TEST(Candidates, GuardClauseNeedsAReturningBranch) {
  const ModuleAst m = parse_text("def f(a):\n    if a:\n        print(1)\n    else:\n        print(2)\n");
  EXPECT_TRUE(of_kind(find_sites(m), TransformKind::GuardClause).empty());
}

TEST(Candidates, LoopContinueOnTailIfWithoutElse) {
  const ModuleAst m = parse_text("def f(n):\n    for i in range(n):\n        if i % 2 == 0:\n            print(i)\n");
  EXPECT_EQ(of_kind(find_sites(m), TransformKind::LoopContinue).size(), 1U);
}

TEST(Candidates, InlineRules) {
  const ModuleAst ok = parse_text(
      "def sq(v):\n    w = v * v\n    return w\n\ndef main():\n    r = sq(3)\n    print(r)\n");
  const auto inl = of_kind(find_sites(ok), TransformKind::InlineSingleCall);
  ASSERT_EQ(inl.size(), 1U);
  EXPECT_EQ(inl[0].detail, "sq");

  const ModuleAst twice = parse_text(
      "def sq(v):\n    return v * v\n\ndef main():\n    print(sq(3))\n    print(sq(4))\n");
  EXPECT_TRUE(of_kind(find_sites(twice), TransformKind::InlineSingleCall).empty());

  const ModuleAst branching = parse_text(
      "def pick(v):\n    if v:\n        return 1\n    return 2\n\ndef main():\n    r = pick(3)\n");
  EXPECT_TRUE(of_kind(find_sites(branching), TransformKind::InlineSingleCall).empty());

  const ModuleAst nested_call = parse_text(
      "def sq(v):\n    return v * v\n\ndef main():\n    print(sq(3) + 1)\n");
  EXPECT_TRUE(of_kind(find_sites(nested_call), TransformKind::InlineSingleCall).empty());
}

TEST(Candidates, OrderedByKindThenDocument) {
  const auto cands = find_sites(cvtest::parse_file(cvtest::corpus_file("mixed.mpy")));
  for (std::size_t i = 1; i < cands.size(); ++i) {
    const auto a = static_cast<int>(cands[i - 1].kind);
    const auto b = static_cast<int>(cands[i].kind);
    EXPECT_LE(a, b);
    if (a == b) EXPECT_LE(cands[i - 1].site, cands[i].site);
  }
}

TEST(Candidates, PredictedDeltaMatchesApplying) {
  const CLConfig cfg;
  for (const auto& path : cvtest::corpus_files()) {
    const ModuleAst m = cvtest::parse_file(path);
    const Rational base = view_score(m, cfg);
    for (const auto& c : enumerate_candidates(m, cfg)) {
      EXPECT_EQ(c.predicted_delta, view_score(apply_transformation(m, c), cfg) - base) << path;
    }
  }
}

// --- apply_transformation ----------------------------------------------------

TEST(Apply, GuardWorkedExample) {
  const ModuleAst m = parse_text(kNestedGuard);
  const auto guard = of_kind(find_sites(m), TransformKind::GuardClause).at(0);
  const ModuleAst out = apply_transformation(m, guard);
  EXPECT_EQ(print_ast(out),
            "def g(a, b):\n"
            "    if not a > 0:\n"
            "        return 0\n"
            "    if b > 0:\n"
            "        return a + b\n"
            "    else:\n"
            "        return a\n");
  EXPECT_EQ(max_nesting_of(m, "g"), 2);
  EXPECT_EQ(max_nesting_of(out, "g"), 1);
  EXPECT_TRUE(equivalent_exhaustive(m, out));
  // Input untouched.
  EXPECT_EQ(print_ast(m), print_ast(parse_text(kNestedGuard)));
}

TEST(Apply, GuardWithReturningThenBranch) {
  const ModuleAst m = parse_text("def f(c):\n    if c:\n        return 1\n    else:\n        return 2\n");
  const ModuleAst out = apply_transformation(m, of_kind(find_sites(m), TransformKind::GuardClause).at(0));
  EXPECT_EQ(print_ast(out), "def f(c):\n    if c:\n        return 1\n    return 2\n");
  EXPECT_TRUE(equivalent_exhaustive(m, out));
}

TEST(Apply, GuardInvertsWhenOnlyElseReturns) {
  const ModuleAst m = parse_text(
      "def f(c):\n    if c:\n        print(1)\n        print(2)\n    else:\n        return 0\n");
  const ModuleAst out = apply_transformation(m, of_kind(find_sites(m), TransformKind::GuardClause).at(0));
  EXPECT_EQ(print_ast(out), "def f(c):\n    if not c:\n        return 0\n    print(1)\n    print(2)\n");
  EXPECT_TRUE(equivalent_exhaustive(m, out));
}

TEST(Apply, GuardNegationUnwrapsNot) {
  const ModuleAst m = parse_text("def f(c):\n    if not c:\n        print(1)\n    else:\n        return 0\n");
  const ModuleAst out = apply_transformation(m, of_kind(find_sites(m), TransformKind::GuardClause).at(0));
  EXPECT_EQ(print_ast(out), "def f(c):\n    if c:\n        return 0\n    print(1)\n");
}

TEST(Apply, LoopContinue) {
  const ModuleAst m = parse_text(
      "def f(n):\n    for i in range(n):\n        if i % 2 == 0:\n            print(i)\n            print(i * i)\n");
  const ModuleAst out = apply_transformation(m, of_kind(find_sites(m), TransformKind::LoopContinue).at(0));
  EXPECT_EQ(print_ast(out),
            "def f(n):\n    for i in range(n):\n        if not i % 2 == 0:\n            continue\n"
            "        print(i)\n        print(i * i)\n");
  EXPECT_TRUE(equivalent_exhaustive(m, out));
}

TEST(Apply, LiftNestedPureRelocation) {
  const ModuleAst m = parse_text(
      "def f(a):\n    def inner(b):\n        if b:\n            return 1\n        return 2\n    return inner(a)\n");
  const ModuleAst out = apply_transformation(m, of_kind(find_sites(m), TransformKind::LiftNested).at(0));
  EXPECT_EQ(print_ast(out),
            "def inner(b):\n    if b:\n        return 1\n    return 2\n\ndef f(a):\n    return inner(a)\n");
  EXPECT_TRUE(equivalent_exhaustive(m, out));
  EXPECT_EQ(max_nesting_of(m, "f.inner"), 2);
  EXPECT_EQ(max_nesting_of(out, "inner"), 1);
}

TEST(Apply, LiftNestedRenamesOnCollision) {
  const ModuleAst m = cvtest::parse_file(cvtest::corpus_file("nested_collision.mpy"));
  const auto lifts = of_kind(find_sites(m), TransformKind::LiftNested);
  ASSERT_FALSE(lifts.empty());
  const ModuleAst out = apply_transformation(m, lifts[0]);
  EXPECT_NE(out.find_function("scale_L1"), nullptr);
  EXPECT_TRUE(interp::same_outcome(interp::run_module(m), interp::run_module(out)));
}

TEST(Apply, LiftNestedEmptiedParentGetsPass) {
  const ModuleAst m = parse_text("def f():\n    def g():\n        return 1\n");
  const ModuleAst out = apply_transformation(m, of_kind(find_sites(m), TransformKind::LiftNested).at(0));
  EXPECT_EQ(print_ast(out), "def g():\n    return 1\n\ndef f():\n    pass\n");
}

TEST(Apply, InlineSingleCall) {
  const ModuleAst m = parse_text(
      "def sq(v):\n    w = v * v\n    return w\n\ndef main():\n    r = sq(3)\n    print(r)\n");
  const ModuleAst out = apply_transformation(m, of_kind(find_sites(m), TransformKind::InlineSingleCall).at(0));
  const std::string text = print_ast(out);
  EXPECT_NE(text.find("__inl_1_v = 3"), std::string::npos) << text;
  EXPECT_NE(text.find("__inl_1_w = __inl_1_v * __inl_1_v"), std::string::npos) << text;
  EXPECT_NE(text.find("r = __inl_1_w"), std::string::npos) << text;
  EXPECT_TRUE(interp::same_outcome(interp::run_module(m), interp::run_module(out)));
}

TEST(Apply, SplitWebsRenamesLaterWebs) {
  const ModuleAst m = cvtest::parse_file(cvtest::corpus_file("webs_split.mpy"));
  const auto webs = of_kind(find_sites(m), TransformKind::SplitWebs);
  ASSERT_EQ(webs.size(), 1U);
  const ModuleAst out = apply_transformation(m, webs[0]);
  const std::string text = print_ast(out);
  EXPECT_NE(text.find("t_2 = twice(5)"), std::string::npos) << text;
  EXPECT_NE(text.find("for t_3 in range(2)"), std::string::npos) << text;
  EXPECT_TRUE(interp::same_outcome(interp::run_module(m), interp::run_module(out)));
  const auto* before = m.find_function("main");
  const auto* after = out.find_function("main");
  EXPECT_LE(analysis::liveness(*after, 5).peak_live, analysis::liveness(*before, 5).peak_live);
}

TEST(Apply, StaleCandidateThrows) {
  const ModuleAst m = parse_text(kNestedGuard);
  auto guard = of_kind(find_sites(m), TransformKind::GuardClause).at(0);
  const ModuleAst once = apply_transformation(m, guard);
  guard.site.steps.back().index = 7;
  try {
    apply_transformation(m, guard);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StaleCandidate);
  }
  TransformationCandidate wrong{TransformKind::LoopContinue, of_kind(find_sites(m), TransformKind::GuardClause)[0].site,
                                "", {}};
  EXPECT_THROW(apply_transformation(m, wrong), Error);
  (void)once;
}

TEST(Apply, EveryCorpusCandidateIsExhaustivelyEquivalent) {
  for (const auto& path : cvtest::corpus_files()) {
    const ModuleAst m = cvtest::parse_file(path);
    for (const auto& c : find_sites(m)) {
      const ModuleAst out = apply_transformation(m, c);
      EXPECT_NO_THROW(syntax::check_static(out)) << path;
      EXPECT_EQ(parse_text(print_ast(out)), out) << path;
      const auto v = interp::check_equivalence_exhaustive(m, out);
      EXPECT_TRUE(v.equivalent) << path << " " << to_string(c.kind) << " "
                                << (v.counterexample ? v.counterexample->to_json().dump() : "");
    }
  }
}

TEST(Apply, NestingLawsOnCorpus) {
  for (const auto& path : cvtest::corpus_files()) {
    const ModuleAst m = cvtest::parse_file(path);
    const auto before = analysis::nesting_profile(m);
    for (const auto& c : find_sites(m)) {
      if (c.kind != TransformKind::GuardClause && c.kind != TransformKind::LoopContinue) continue;
      const auto after = analysis::nesting_profile(apply_transformation(m, c));
      ASSERT_EQ(before.size(), after.size());
      for (std::size_t i = 0; i < before.size(); ++i) {
        EXPECT_LE(after[i].max_nesting, before[i].max_nesting) << path << " " << before[i].name;
      }
    }
  }
}

// --- optimize ----------------------------------------------------------------

TEST(Optimize, PassIsUnchanged) {
  const OptimizeResult r = optimize(parse_text("pass\n"), CLConfig{});
  EXPECT_TRUE(r.trace.entries.empty());
  EXPECT_EQ(print_ast(r.module), "pass\n");
}

TEST(Optimize, NestedGuardOneApplicationThenFixpoint) {
  const OptimizeResult r = optimize(parse_text(kNestedGuard), CLConfig{});
  ASSERT_EQ(r.trace.applied_count(), 1U);
  EXPECT_EQ(r.trace.entries[0].kind, TransformKind::GuardClause);
  EXPECT_EQ(r.trace.entries[0].score_before, Rational(1));
  EXPECT_EQ(r.trace.entries[0].score_after, Rational(0));
  EXPECT_EQ(optimize(r.module, CLConfig{}).trace.applied_count(), 0U);
}

TEST(Optimize, LawsOnCorpus) {
  const CLConfig cfg;
  for (const auto& path : cvtest::corpus_files()) {
    const ModuleAst m = cvtest::parse_file(path);
    const OptimizeResult r = optimize(m, cfg);
    EXPECT_LE(r.score_after, r.score_before) << path;
    Rational last = r.score_before;
    for (const auto& e : r.trace.entries) {
      if (e.status != TraceStatus::Applied) continue;
      EXPECT_LT(e.score_after, e.score_before) << path;
      EXPECT_EQ(e.score_before, last) << path;
      last = e.score_after;
    }
    EXPECT_EQ(last, r.score_after) << path;
    EXPECT_EQ(r.trace.equivalence_failures(), 0U) << path;
    if (r.trace.applied_count() > 0) {
      ASSERT_TRUE(r.trace.final_check.has_value()) << path;
      EXPECT_TRUE(r.trace.final_check->equivalent) << path;
    }
    EXPECT_EQ(optimize(r.module, cfg).trace.applied_count(), 0U) << path;
  }
}

TEST(Optimize, Deterministic) {
  const CLConfig cfg;
  for (const char* name : {"mixed.mpy", "call_chain.mpy", "guard_deep.mpy"}) {
    const ModuleAst m = cvtest::parse_file(cvtest::corpus_file(name));
    const OptimizeResult a = optimize(m, cfg);
    const OptimizeResult b = optimize(m, cfg);
    EXPECT_EQ(a.trace.to_json().dump(), b.trace.to_json().dump());
    EXPECT_EQ(print_ast(a.module), print_ast(b.module));
  }
}

TEST(Optimize, MaxItersBoundsApplications) {
  CLConfig cfg;
  cfg.max_iters = 1;
  const OptimizeResult r = optimize(cvtest::parse_file(cvtest::corpus_file("guard_deep.mpy")), cfg);
  EXPECT_LE(r.trace.applied_count(), 1U);
  EXPECT_LE(r.trace.iterations, 1);
}

TEST(Optimize, NoCheckEnumeratesTheSameCandidates) {
  const CLConfig cfg;
  for (const char* name : {"mixed.mpy", "guard_loop.mpy"}) {
    const ModuleAst m = cvtest::parse_file(cvtest::corpus_file(name));
    const OptimizeResult checked = optimize(m, cfg, true);
    const OptimizeResult unchecked = optimize(m, cfg, false);
    EXPECT_FALSE(unchecked.trace.final_check.has_value());
    EXPECT_EQ(print_ast(checked.module), print_ast(unchecked.module));
  }
}

TEST(Optimize, TraceJsonShape) {
  const OptimizeResult r = optimize(parse_text(kNestedGuard), CLConfig{});
  const auto j = r.trace.to_json();
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), r.trace.entries.size());
  const auto& e = j[0];
  for (const char* key : {"kind", "site", "score_before", "score_after", "status", "reason"}) {
    EXPECT_TRUE(e.contains(key)) << key;
  }
  EXPECT_EQ(e["kind"], "GuardClause");
  EXPECT_EQ(e["status"], "applied");
  EXPECT_TRUE(e["reason"].is_null());
}

}  // namespace
