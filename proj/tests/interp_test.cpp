#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "cogniview/equivalence.hpp"
#include "cogniview/interp.hpp"
#include "cogniview/parser.hpp"
#include "cogniview/printer.hpp"
#include "oracles/program_gen.hpp"
#include "support.hpp"

namespace {

using namespace cogniview;
using namespace cogniview::interp;
using cogniview::syntax::parse_text;

ExecOutcome run(const std::string& text, std::int64_t steps = kDefaultStepLimit) {
  return run_module(parse_text(text), steps);
}

std::vector<std::string> lines(std::initializer_list<const char*> items) {
  return {items.begin(), items.end()};
}

void expect_error(const std::string& text, RuntimeErrorKind kind) {
  const ExecOutcome out = run(text);
  EXPECT_EQ(out.status, Status::RuntimeError) << text;
  ASSERT_TRUE(out.error.has_value()) << text;
  EXPECT_EQ(*out.error, kind) << text << " -> " << out.message;
}

// --- evaluation --------------------------------------------------------------

TEST(Interp, PrintsSum) {
  const ExecOutcome out = run("print(1 + 2)\n");
  EXPECT_EQ(out.status, Status::Ok);
  EXPECT_EQ(out.output, lines({"3"}));
}

TEST(Interp, DivisionByZero) { expect_error("x = 1 // 0\n", RuntimeErrorKind::DivZero); }

TEST(Interp, PrecedenceEvaluation) { EXPECT_EQ(run("a = 1\nb = 2\nprint(a + b * 3)\n").output, lines({"7"})); }

TEST(Interp, FloorSemantics) {
  EXPECT_EQ(run("print(-7 // 2)\nprint(7 // -2)\nprint(-7 % 2)\nprint(7 % -2)\nprint(6 % 3)\n").output,
            lines({"-4", "-4", "1", "-1", "0"}));
  expect_error("x = 5 % 0\n", RuntimeErrorKind::DivZero);
}

TEST(Interp, OverflowIsAnError) {
  expect_error("x = 9223372036854775807 + 1\n", RuntimeErrorKind::Overflow);
  expect_error("x = -9223372036854775807 - 2\n", RuntimeErrorKind::Overflow);
  expect_error("x = 4611686018427387904 * 2\n", RuntimeErrorKind::Overflow);
  expect_error("x = (-9223372036854775807 - 1) // -1\n", RuntimeErrorKind::Overflow);
  expect_error("x = -(-9223372036854775807 - 1)\n", RuntimeErrorKind::Overflow);
}

TEST(Interp, StringsAndLists) {
  const ExecOutcome out = run(
      "s = \"ab\" + 'cd'\nprint(s)\nprint(len(s))\nprint(s[1])\nxs = [1, \"two\", None, True]\n"
      "print(xs)\nxs[0] = xs\nprint(xs)\nprint([1] + [2])\nprint(\"\xc3\xa9t\xc3\xa9\"[1])\n"
      "print(len(\"\xc3\xa9t\xc3\xa9\"))\nprint(xs[-1])\n");
  EXPECT_EQ(out.status, Status::Ok) << out.message;
  EXPECT_EQ(out.output, lines({"abcd", "4", "b", "[1, 'two', None, True]", "[[...], 'two', None, True]", "[1, 2]",
                               "t", "3", "True"}));
}

TEST(Interp, BooleansAreNotIntegers) {
  expect_error("x = True + 1\n", RuntimeErrorKind::TypeError);
  expect_error("x = [1][True]\n", RuntimeErrorKind::TypeError);
  EXPECT_EQ(run("print(True == 1)\nprint(not 0)\nprint(1 == 1)\n").output, lines({"False", "True", "True"}));
}

TEST(Interp, ShortCircuitReturnsOperand) {
  EXPECT_EQ(run("print(0 or \"x\")\nprint(\"\" and 1 // 0)\nprint([] or None)\n").output,
            lines({"x", "", "None"}));
}

TEST(Interp, ComparisonTypes) {
  EXPECT_EQ(run("print(\"a\" < \"b\")\nprint(3 >= 3)\nprint(None == None)\nprint([1] == [1])\n").output,
            lines({"True", "True", "True", "True"}));
  expect_error("x = 1 < \"a\"\n", RuntimeErrorKind::TypeError);
  expect_error("x = [1] < [2]\n", RuntimeErrorKind::TypeError);
}

TEST(Interp, RuntimeErrors) {
  expect_error("print(y)\n", RuntimeErrorKind::UnboundName);
  expect_error("x = [1, 2][2]\n", RuntimeErrorKind::IndexError);
  expect_error("x = \"ab\"[-3]\n", RuntimeErrorKind::IndexError);
  expect_error("x = len(3)\n", RuntimeErrorKind::TypeError);
  expect_error("x = 3\nx[0] = 1\n", RuntimeErrorKind::TypeError);
  expect_error("s = \"ab\"\ns[0] = \"c\"\n", RuntimeErrorKind::TypeError);
  expect_error("x = -\"a\"\n", RuntimeErrorKind::TypeError);
  expect_error("for i in range(0, 5, 0):\n    pass\n", RuntimeErrorKind::TypeError);
  expect_error("def f(a):\n    return a\n\nf()\n", RuntimeErrorKind::TypeError);
}

TEST(Interp, FunctionsSeeOnlyTheirLocals) {
  expect_error("x = 5\n\ndef f():\n    return x\n\nprint(f())\n", RuntimeErrorKind::UnboundName);
}

TEST(Interp, ListsAreSharedByReference) {
  EXPECT_EQ(run("def push(xs):\n    xs[0] = 9\n\nys = [1]\npush(ys)\nprint(ys)\n").output, lines({"[9]"}));
}

TEST(Interp, RangeForms) {
  EXPECT_EQ(run("for i in range(3):\n    print(i)\nfor i in range(5, 1, -2):\n    print(i)\n").output,
            lines({"0", "1", "2", "5", "3"}));
  // The range is evaluated once; changing the bound inside the loop has no effect.
  EXPECT_EQ(run("n = 2\nfor i in range(n):\n    n = 10\n    print(i)\n").output, lines({"0", "1"}));
}

TEST(Interp, LoopControl) {
  EXPECT_EQ(run("i = 0\nwhile True:\n    i = i + 1\n    if i == 2:\n        continue\n    if i > 3:\n"
                "        break\n    print(i)\n")
                .output,
            lines({"1", "3"}));
}

TEST(Interp, MainResultAndNestedDefs) {
  const ExecOutcome out = run(
      "def main():\n    def sq(v):\n        return v * v\n    print(sq(4))\n    return \"done\"\n");
  EXPECT_EQ(out.output, lines({"16"}));
  ASSERT_TRUE(out.result.has_value());
  EXPECT_EQ(out.result->repr(), "'done'");
}

TEST(Interp, MainWithParametersIsNotRun) {
  const ExecOutcome out = run("def main(x):\n    print(x)\n\nprint(1)\n");
  EXPECT_EQ(out.output, lines({"1"}));
  EXPECT_FALSE(out.result.has_value());
}

TEST(Interp, StepLimitStopsInfiniteLoop) {
  const ExecOutcome out = run("while True:\n    pass\n", 1000);
  EXPECT_EQ(out.status, Status::RuntimeError);
  EXPECT_EQ(out.error, RuntimeErrorKind::StepLimit);
}

TEST(Interp, DeepRecursionEndsAsStepLimit) {
  const ExecOutcome out = run("def f(n):\n    return f(n + 1)\n\nf(0)\n");
  EXPECT_EQ(out.error, RuntimeErrorKind::StepLimit);
}

TEST(Interp, SequenceSizeIsBounded) {
  const ExecOutcome out = run("s = \"x\"\nwhile True:\n    s = s + s\n");
  EXPECT_EQ(out.status, Status::RuntimeError);
}

TEST(Interp, DeadlineYieldsTimeout) {
  ExecLimits limits;
  limits.step_limit = std::numeric_limits<std::int64_t>::max();
  limits.deadline = std::chrono::milliseconds(20);
  const ExecOutcome out = run_module(parse_text("while True:\n    pass\n"), limits);
  EXPECT_EQ(out.status, Status::Timeout);
}

TEST(Interp, RunFunctionDirectly) {
  const auto m = parse_text("def add(a, b):\n    return a + b\n\nprint(\"top\")\n");
  const ExecOutcome out = run_function(m, "add", {Value::integer(2), Value::integer(5)});
  EXPECT_EQ(out.status, Status::Ok);
  EXPECT_TRUE(out.output.empty());
  EXPECT_EQ(out.result->repr(), "7");
  EXPECT_EQ(run_function(m, "add", {Value::integer(2)}).error, RuntimeErrorKind::TypeError);
  EXPECT_EQ(run_function(m, "nope", {}).error, RuntimeErrorKind::TypeError);
}

TEST(Interp, OutcomeJson) {
  const auto j = run("print(1)\nx = 1 // 0\n").to_json();
  EXPECT_EQ(j["status"], "RuntimeError");
  EXPECT_EQ(j["error"], "DivZero");
  EXPECT_EQ(j["output"].dump(), R"(["1"])");
}

// --- laws over the corpus and generated programs -----------------------------

TEST(InterpLaws, DeterministicOnCorpus) {
  for (const auto& path : cvtest::corpus_files()) {
    const auto m = cvtest::parse_file(path);
    EXPECT_TRUE(same_outcome(run_module(m), run_module(m))) << path;
  }
}

TEST(InterpLaws, RespectsPrintRoundTrip) {
  for (const auto& path : cvtest::corpus_files()) {
    const auto m = cvtest::parse_file(path);
    const auto back = parse_text(syntax::print_ast(m));
    EXPECT_TRUE(same_outcome(run_module(m), run_module(back))) << path;
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto m = cvtest::gen::ProgramGen(seed).module();
    const auto back = parse_text(syntax::print_ast(m));
    EXPECT_TRUE(same_outcome(run_module(m, 5000), run_module(back, 5000))) << "seed " << seed;
  }
}

TEST(InterpLaws, GeneratedProgramsNeverCrash) {
  for (std::uint64_t seed = 1000; seed < 1600; ++seed) {
    const auto m = cvtest::gen::ProgramGen(seed).module();
    const ExecOutcome out = run_module(m, 5000);
    if (out.status == Status::RuntimeError) EXPECT_TRUE(out.error.has_value());
    for (const auto* f : m.functions()) {
      std::vector<Value> args(f->params.size(), Value::integer(1));
      (void)run_function(m, f->name, args, ExecLimits{5000, 50, std::nullopt});
    }
  }
}

// --- equivalence oracle ------------------------------------------------------

TEST(Equivalence, Reflexive) {
  analysis::CLConfig cfg;
  cfg.fuzz_trials = 50;
  for (const auto& path : cvtest::corpus_files()) {
    const auto m = cvtest::parse_file(path);
    const EquivalenceVerdict v = check_equivalence(m, m, cfg);
    EXPECT_TRUE(v.equivalent) << path;
    EXPECT_FALSE(v.counterexample.has_value());
  }
}

TEST(Equivalence, GuardPairExhaustive) {
  const auto orig = parse_text(
      "def g(a, b):\n    if a > 0:\n        if b > 0:\n            return a + b\n        else:\n"
      "            return a\n    else:\n        return 0\n");
  const auto view = parse_text(
      "def g(a, b):\n    if not a > 0:\n        return 0\n    if b > 0:\n        return a + b\n"
      "    else:\n        return a\n");
  const EquivalenceVerdict v = check_equivalence_exhaustive(orig, view);
  EXPECT_TRUE(v.equivalent);
  const int pool = static_cast<int>(value_pool().size());
  EXPECT_EQ(v.trials, 1 + pool * pool);
  // Independent re-check on the small integer grid.
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      const std::vector<Value> args{Value::integer(a), Value::integer(b)};
      EXPECT_TRUE(same_outcome(run_function(orig, "g", args), run_function(view, "g", args)));
    }
  }
}

TEST(Equivalence, ConstructedMismatchFoundOnFirstIntTrial) {
  const auto orig = parse_text("def f(x):\n    return x + 1\n");
  const auto view = parse_text("def f(x):\n    return x + 2\n");
  const EquivalenceVerdict v = check_equivalence(orig, view, analysis::CLConfig{});
  ASSERT_FALSE(v.equivalent);
  ASSERT_TRUE(v.counterexample.has_value());
  const Counterexample& cx = *v.counterexample;
  EXPECT_EQ(cx.function, "f");
  ASSERT_EQ(cx.args.size(), 1U);
  EXPECT_NE(cx.args[0].as_int(), nullptr);
  EXPECT_EQ(cx.reason, "OutcomeMismatch");
  const auto j = cx.to_json();
  for (const char* key : {"function", "args", "original", "view"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Equivalence, ErrorForError) {
  const auto orig = parse_text("def f(x):\n    return 10 // x\n");
  const auto view = parse_text("def f(x):\n    if x == 0:\n        return 0\n    return 10 // x\n");
  EXPECT_FALSE(check_equivalence(orig, view, analysis::CLConfig{}).equivalent);
  const auto kinds = parse_text("def f(x):\n    return [][x]\n");
  EXPECT_FALSE(check_equivalence(orig, kinds, analysis::CLConfig{}).equivalent);
}

TEST(Equivalence, TopLevelOutputCompared) {
  EXPECT_FALSE(check_equivalence(parse_text("print(1)\n"), parse_text("print(2)\n"), {}).equivalent);
}

TEST(Equivalence, ArityMismatch) {
  const auto v = check_equivalence(parse_text("def f(a):\n    return a\n"),
                                   parse_text("def f(a, b):\n    return a\n"), {});
  ASSERT_FALSE(v.equivalent);
  EXPECT_EQ(v.counterexample->reason, "ArityMismatch");
}

TEST(Equivalence, ArtifactsAreNotFuzzed) {
  const auto orig = parse_text("def f():\n    return 1\n");
  const auto view = parse_text("def f():\n    return 1\n\ndef f_L1():\n    return 2\n\ndef __inl_1_x():\n    return 3\n");
  EXPECT_EQ(shared_functions(orig, view), std::vector<std::string>{"f"});
}

TEST(Equivalence, Deterministic) {
  const auto orig = parse_text("def f(a, b, c):\n    return a + b + c\n");
  const auto view = parse_text("def f(a, b, c):\n    return a + (b + c)\n");
  const auto v1 = check_equivalence(orig, view, {});
  const auto v2 = check_equivalence(orig, view, {});
  EXPECT_EQ(v1.equivalent, v2.equivalent);
  EXPECT_EQ(v1.trials, v2.trials);
  EXPECT_EQ(v1.counterexample.has_value(), v2.counterexample.has_value());
  if (v1.counterexample && v2.counterexample) {
    EXPECT_EQ(v1.counterexample->to_json().dump(), v2.counterexample->to_json().dump());
  }
}

TEST(Equivalence, StepLimitedRunsAgreeOnOutputPrefix) {
  ExecOutcome a;
  a.status = Status::RuntimeError;
  a.error = RuntimeErrorKind::StepLimit;
  a.output = {"1", "2"};
  ExecOutcome b = a;
  b.output = {"1", "2", "3"};
  EXPECT_TRUE(outcomes_agree(a, b));
  b.output = {"1", "9"};
  EXPECT_FALSE(outcomes_agree(a, b));
}

}  // namespace
