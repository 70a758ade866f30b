#include "cogniview/optimize.hpp"

#include <algorithm>
#include <set>

#include "cogniview/metrics.hpp"
#include "cogniview/printer.hpp"

namespace cogniview::refactor {

using syntax::ModuleAst;

nlohmann::ordered_json TraceEntry::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind);
  j["site"] = site;
  j["detail"] = detail;
  j["score_before"] = analysis::score_to_json(score_before);
  j["score_after"] = analysis::score_to_json(score_after);
  j["status"] = status == TraceStatus::Applied ? "applied" : "rejected";
  j["reason"] = reason.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(reason);
  if (counterexample) j["counterexample"] = counterexample->to_json();
  return j;
}

std::size_t OptimizeTrace::applied_count() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const TraceEntry& e) {
    return e.status == TraceStatus::Applied;
  }));
}

std::size_t OptimizeTrace::equivalence_failures() const {
  const auto failed = std::count_if(entries.begin(), entries.end(), [](const TraceEntry& e) {
    return e.reason == "equivalence-failure";
  });
  return static_cast<std::size_t>(failed) + (final_check && !final_check->equivalent ? 1 : 0);
}

nlohmann::ordered_json OptimizeTrace::to_json() const {
  auto out = nlohmann::ordered_json::array();
  for (const TraceEntry& e : entries) out.push_back(e.to_json());
  return out;
}

namespace {

/// Identity of a candidate that survives edits elsewhere in the module.
std::string candidate_key(const ModuleAst& module, const TransformationCandidate& c) {
  std::string key = std::string(to_string(c.kind)) + "|" + c.detail + "|";
  if (const syntax::Stmt* s = syntax::resolve(module, c.site)) {
    ModuleAst single;
    single.items.push_back(*s);
    key += syntax::print_ast(single);
  }
  return key;
}

}  // namespace

OptimizeResult optimize(const ModuleAst& module, const analysis::CLConfig& cfg, bool check) {
  OptimizeResult result;
  result.module = module;
  result.score_before = view_score(module, cfg);
  Rational score = result.score_before;
  std::set<std::string> disabled;
  std::vector<TransformationCandidate> remaining;

  for (;;) {
    std::vector<TransformationCandidate> cands;
    for (TransformationCandidate& c : enumerate_candidates(result.module, cfg)) {
      if (disabled.count(candidate_key(result.module, c)) == 0) cands.push_back(std::move(c));
    }
    remaining = cands;
    if (result.trace.iterations >= cfg.max_iters) break;
    // Stable: equal deltas keep kind-major, document-order enumeration order.
    std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
      return a.predicted_delta < b.predicted_delta;
    });
    if (cands.empty() || !(cands.front().predicted_delta < Rational(0))) break;
    const TransformationCandidate& best = cands.front();
    ++result.trace.iterations;

    ModuleAst next = apply_transformation(result.module, best);
    const Rational next_score = view_score(next, cfg);
    TraceEntry entry{best.kind, best.site_label(result.module), best.detail, score, next_score,
                     TraceStatus::Applied, "", std::nullopt};
    if (check) {
      interp::EquivalenceVerdict verdict = interp::check_equivalence(module, next, cfg);
      if (!verdict.equivalent) {
        entry.status = TraceStatus::Rejected;
        entry.reason = "equivalence-failure";
        entry.counterexample = std::move(verdict.counterexample);
        disabled.insert(candidate_key(result.module, best));
        result.trace.entries.push_back(std::move(entry));
        continue;
      }
    }
    result.trace.entries.push_back(std::move(entry));
    result.module = std::move(next);
    score = next_score;
  }

  for (const TransformationCandidate& c : remaining) {
    if (c.predicted_delta < Rational(0)) continue;  // only left over when max_iters ran out
    result.trace.entries.push_back(TraceEntry{c.kind, c.site_label(result.module), c.detail, score,
                                              score + c.predicted_delta, TraceStatus::Rejected,
                                              "no-improvement", std::nullopt});
  }
  if (check && result.trace.applied_count() > 0) {
    result.trace.final_check = interp::check_equivalence(module, result.module, cfg);
  }
  result.score_after = score;
  return result;
}

}  // namespace cogniview::refactor
