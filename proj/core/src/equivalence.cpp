#include "cogniview/equivalence.hpp"

#include <random>
#include <regex>

#include "cogniview/metrics.hpp"

namespace cogniview::interp {

using syntax::FunctionDef;
using syntax::ModuleAst;

nlohmann::ordered_json Counterexample::to_json() const {
  nlohmann::ordered_json j;
  j["function"] = function;
  auto& a = j["args"] = nlohmann::ordered_json::array();
  for (const Value& v : args) a.push_back(v.repr());
  j["original"] = original.to_json();
  j["view"] = view.to_json();
  j["reason"] = reason;
  return j;
}

std::vector<Value> value_pool() {
  std::vector<Value> pool;
  for (int i = -3; i <= 3; ++i) pool.push_back(Value::integer(i));
  pool.push_back(Value::string(""));
  pool.push_back(Value::string("ab"));
  pool.push_back(Value::boolean(true));
  pool.push_back(Value::boolean(false));
  pool.push_back(Value::none());
  pool.push_back(Value::list({}));
  pool.push_back(Value::list({Value::integer(1), Value::integer(2), Value::integer(3)}));
  return pool;
}

bool outcomes_agree(const ExecOutcome& a, const ExecOutcome& b) {
  if (same_outcome(a, b)) return true;
  const auto step_limited = [](const ExecOutcome& o) {
    return o.status == Status::RuntimeError && o.error == RuntimeErrorKind::StepLimit;
  };
  if (!step_limited(a) || !step_limited(b)) return false;
  const auto& shorter = a.output.size() <= b.output.size() ? a.output : b.output;
  const auto& longer = a.output.size() <= b.output.size() ? b.output : a.output;
  return std::equal(shorter.begin(), shorter.end(), longer.begin());
}

std::vector<std::string> shared_functions(const ModuleAst& orig, const ModuleAst& view) {
  static const std::regex lifted_suffix(".*_L[0-9]+");
  std::vector<std::string> names;
  for (const FunctionDef* fn : orig.functions()) {
    if (fn->name.rfind("__inl_", 0) == 0 || std::regex_match(fn->name, lifted_suffix)) continue;
    if (view.find_function(fn->name) != nullptr) names.push_back(fn->name);
  }
  return names;
}

namespace {

class Checker {
 public:
  Checker(const ModuleAst& orig, const ModuleAst& view) : orig_(orig), view_(view) {
    trial_limits_.step_limit = kTrialStepLimit;
  }

  EquivalenceVerdict verdict() const { return verdict_; }
  bool failed() const { return !verdict_.equivalent; }

  void program() {
    const ExecOutcome a = run_module(orig_);
    const ExecOutcome b = run_module(view_);
    record(analysis::kModuleScope, {}, a, b);
  }

  /// Returns the common arity, or nullopt after recording a mismatch.
  std::optional<std::size_t> arity(const std::string& name) {
    const FunctionDef* a = orig_.find_function(name);
    const FunctionDef* b = view_.find_function(name);
    if (a->params.size() == b->params.size()) return a->params.size();
    Counterexample cx;
    cx.function = name;
    cx.reason = "ArityMismatch";
    cx.original.message = std::to_string(a->params.size()) + " parameters";
    cx.view.message = std::to_string(b->params.size()) + " parameters";
    fail(std::move(cx));
    return std::nullopt;
  }

  void call(const std::string& name, const std::vector<std::size_t>& picks) {
    // Each side receives its own fresh values so mutation cannot leak across.
    const ExecOutcome a = run_function(orig_, name, materialize(picks), trial_limits_);
    const ExecOutcome b = run_function(view_, name, materialize(picks), trial_limits_);
    record(name, materialize(picks), a, b);
  }

 private:
  static std::vector<Value> materialize(const std::vector<std::size_t>& picks) {
    const std::vector<Value> pool = value_pool();
    std::vector<Value> args;
    args.reserve(picks.size());
    for (const std::size_t p : picks) args.push_back(pool[p].deep_copy());
    return args;
  }

  void record(const std::string& name, std::vector<Value> args, const ExecOutcome& a,
              const ExecOutcome& b) {
    ++verdict_.trials;
    if (outcomes_agree(a, b)) return;
    fail(Counterexample{name, std::move(args), a, b});
  }

  void fail(Counterexample cx) {
    verdict_.equivalent = false;
    verdict_.counterexample = std::move(cx);
  }

  const ModuleAst& orig_;
  const ModuleAst& view_;
  ExecLimits trial_limits_;
  EquivalenceVerdict verdict_;
};

}  // namespace

EquivalenceVerdict check_equivalence(const ModuleAst& orig, const ModuleAst& view,
                                     const analysis::CLConfig& cfg) {
  Checker checker(orig, view);
  checker.program();
  std::mt19937_64 rng(cfg.seed);
  const std::size_t pool_size = value_pool().size();
  for (const std::string& name : shared_functions(orig, view)) {
    if (checker.failed()) break;
    const auto arity = checker.arity(name);
    if (!arity) break;
    const int trials = *arity == 0 ? 1 : cfg.fuzz_trials;
    for (int t = 0; t < trials && !checker.failed(); ++t) {
      std::vector<std::size_t> picks(*arity);
      for (std::size_t& p : picks) p = static_cast<std::size_t>(rng() % pool_size);
      checker.call(name, picks);
    }
  }
  return checker.verdict();
}

EquivalenceVerdict check_equivalence_exhaustive(const ModuleAst& orig, const ModuleAst& view,
                                                int max_arity) {
  Checker checker(orig, view);
  checker.program();
  const std::size_t pool_size = value_pool().size();
  for (const std::string& name : shared_functions(orig, view)) {
    if (checker.failed()) break;
    const auto arity = checker.arity(name);
    if (!arity) break;
    if (static_cast<int>(*arity) > max_arity) continue;
    std::vector<std::size_t> picks(*arity, 0);
    while (!checker.failed()) {
      checker.call(name, picks);
      std::size_t k = 0;
      while (k < picks.size() && ++picks[k] == pool_size) picks[k++] = 0;
      if (k == picks.size()) break;
    }
  }
  return checker.verdict();
}

}  // namespace cogniview::interp
