#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogniview/ast.hpp"
#include "cogniview/config.hpp"
#include "cogniview/interp.hpp"

namespace cogniview::interp {

/// Step budget for a single fuzz call; generous for the corpus, small enough
/// to keep runaway loops on odd inputs cheap.
inline constexpr std::int64_t kTrialStepLimit = 100'000;

struct Counterexample {
  std::string function;  // "<module>" for the top-level program run
  std::vector<Value> args;
  ExecOutcome original;
  ExecOutcome view;
  std::string reason = "OutcomeMismatch";  // or "ArityMismatch"

  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

struct EquivalenceVerdict {
  bool equivalent = true;
  int trials = 0;
  std::optional<Counterexample> counterexample;
};

/// The fuzz value pool in a fixed order; each call yields fresh lists.
std::vector<Value> value_pool();

/// Outcome equality used by the oracle: `same_outcome`, except that two runs
/// both stopped by StepLimit agree when one output is a prefix of the other
/// (transformations shift step counts).
bool outcomes_agree(const ExecOutcome& a, const ExecOutcome& b);

/// Names fuzzed by the oracle: top-level functions present in both modules,
/// minus transformation artifacts (`__inl_` prefix, `_L<n>` suffix).
std::vector<std::string> shared_functions(const syntax::ModuleAst& orig,
                                          const syntax::ModuleAst& view);

/// Runs both programs, then calls every shared function with
/// cfg.fuzz_trials argument vectors drawn from the pool by a generator seeded
/// with cfg.seed. Zero-parameter functions are called once.
EquivalenceVerdict check_equivalence(const syntax::ModuleAst& orig, const syntax::ModuleAst& view,
                                     const analysis::CLConfig& cfg);

/// Like check_equivalence but calls shared functions of arity ≤ max_arity
/// with every tuple from the pool; higher arities are skipped.
EquivalenceVerdict check_equivalence_exhaustive(const syntax::ModuleAst& orig,
                                                const syntax::ModuleAst& view, int max_arity = 2);

}  // namespace cogniview::interp
