#include "cogniview/metrics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "cogniview/cfg.hpp"
#include "cogniview/liveness.hpp"
#include "cogniview/scope.hpp"

namespace cogniview::analysis {

using namespace cogniview::syntax;

namespace {

struct DepthAccumulator {
  int max = 0;
  long total = 0;
  int count = 0;

  void add(int depth) {
    max = std::max(max, depth);
    total += depth;
    ++count;
  }
  [[nodiscard]] NestingProfile profile(std::string name) const {
    return NestingProfile{std::move(name), max,
                          count == 0 ? 0.0 : static_cast<double>(total) / count, count};
  }
};

void accumulate(const Block& block, int depth, DepthAccumulator& acc) {
  for (const Stmt& s : block) {
    acc.add(depth);
    if (s.as<FunctionDef>() != nullptr) continue;
    for (int b = 0; b < child_block_count(s); ++b) accumulate(*child_block(s, b), depth + 1, acc);
  }
}

void profile_function(const FunctionDef& def, const std::string& qualified, int base,
                      std::vector<NestingProfile>& out) {
  DepthAccumulator acc;
  accumulate(def.body, base, acc);
  out.push_back(acc.profile(qualified));
  // Definitions only appear at body level, so their own depth is `base`.
  for (const FunctionDef* child : def.nested()) {
    profile_function(*child, qualified + "." + child->name, base + 1, out);
  }
}

}  // namespace

std::vector<NestingProfile> nesting_profile(const ModuleAst& module) {
  std::vector<NestingProfile> out;
  if (module.has_top_level_code()) {
    DepthAccumulator acc;
    for (const Stmt& s : module.items) {
      if (s.as<FunctionDef>() != nullptr) continue;
      acc.add(0);
      for (int b = 0; b < child_block_count(s); ++b) accumulate(*child_block(s, b), 1, acc);
    }
    out.push_back(acc.profile(kModuleScope));
  }
  for (const FunctionDef* def : module.functions()) profile_function(*def, def->name, 0, out);
  return out;
}

CallGraphInfo call_depth(const ModuleAst& module) {
  const ScopeTable scopes(module);
  const auto& fns = scopes.functions();
  const int module_node = static_cast<int>(fns.size());
  const FunctionDef* main_fn = module.find_function("main");
  const bool implicit_main = main_fn != nullptr && main_fn->params.empty();
  const bool has_module_node = module.has_top_level_code() || implicit_main;

  const std::size_t node_count = fns.size() + 1;
  std::vector<std::set<int>> succ(node_count);
  auto scan = [&](const FunctionDef* caller, int from) {
    for_each_call_in_scope(module, caller, [&](const Call& call, const Span& span) {
      if (is_builtin(call.callee)) return;
      const FunctionDef* target = scopes.resolve(caller, call.callee);
      if (target == nullptr) {
        throw Error(ErrorKind::UnresolvedCallee, "call to undefined function '" + call.callee + "'",
                    span);
      }
      succ[static_cast<std::size_t>(from)].insert(scopes.index_of(target));
    });
  };
  scan(nullptr, module_node);
  if (implicit_main) succ[static_cast<std::size_t>(module_node)].insert(scopes.index_of(main_fn));
  for (std::size_t i = 0; i < fns.size(); ++i) scan(fns[i].def, static_cast<int>(i));

  auto name_of = [&](int n) {
    return n == module_node ? std::string(kModuleScope) : fns[static_cast<std::size_t>(n)].qualified;
  };

  CallGraphInfo info;
  for (std::size_t i = 0; i < node_count; ++i) {
    for (const int j : succ[i]) info.edges.emplace_back(name_of(static_cast<int>(i)), name_of(j));
  }
  std::sort(info.edges.begin(), info.edges.end());

  // Tarjan's strongly connected components.
  std::vector<int> index(node_count, -1);
  std::vector<int> low(node_count, 0);
  std::vector<bool> on_stack(node_count, false);
  std::vector<int> stack;
  std::vector<bool> recursive(node_count, false);
  int counter = 0;
  std::function<void(int)> strong = [&](int v) {
    const auto vi = static_cast<std::size_t>(v);
    index[vi] = low[vi] = counter++;
    stack.push_back(v);
    on_stack[vi] = true;
    for (const int w : succ[vi]) {
      const auto wi = static_cast<std::size_t>(w);
      if (index[wi] < 0) {
        strong(w);
        low[vi] = std::min(low[vi], low[wi]);
      } else if (on_stack[wi]) {
        low[vi] = std::min(low[vi], index[wi]);
      }
    }
    if (low[vi] == index[vi]) {
      std::vector<int> component;
      int w = -1;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = false;
        component.push_back(w);
      } while (w != v);
      const bool cyclic = component.size() > 1 || succ[vi].count(v) != 0;
      if (cyclic) {
        for (const int c : component) recursive[static_cast<std::size_t>(c)] = true;
      }
    }
  };
  for (std::size_t v = 0; v < node_count; ++v) {
    if (index[v] < 0) strong(static_cast<int>(v));
  }

  // Longest chain (in frames) through the acyclic remainder.
  std::vector<int> longest(node_count, 0);
  std::function<int(int)> depth_from = [&](int v) -> int {
    const auto vi = static_cast<std::size_t>(v);
    if (longest[vi] > 0) return longest[vi];
    int best = 0;
    for (const int w : succ[vi]) {
      if (!recursive[static_cast<std::size_t>(w)]) best = std::max(best, depth_from(w));
    }
    return longest[vi] = best + 1;
  };
  for (std::size_t v = 0; v < node_count; ++v) {
    const bool present = static_cast<int>(v) != module_node || has_module_node;
    if (present && !recursive[v]) info.max_depth = std::max(info.max_depth, depth_from(static_cast<int>(v)));
  }
  for (std::size_t v = 0; v < fns.size(); ++v) {
    if (recursive[v]) info.recursive.push_back(fns[v].qualified);
  }
  std::sort(info.recursive.begin(), info.recursive.end());
  return info;
}

std::vector<OverlongLine> overlong_lines(const SourceUnit& source, int limit) {
  std::vector<OverlongLine> out;
  for (std::size_t n = 1; n <= source.line_count(); ++n) {
    const auto length = static_cast<int>(code_point_count(source.line(n)));
    if (length > limit) out.push_back(OverlongLine{static_cast<int>(n), length});
  }
  return out;
}

int CognitiveLoadReport::max_nesting() const {
  int best = 0;
  for (const auto& f : functions) best = std::max(best, f.max_nesting);
  return best;
}

int CognitiveLoadReport::total_overload() const {
  int total = 0;
  for (const auto& f : functions) total += f.overload_count;
  return total;
}

CognitiveLoadReport cl_report(const ModuleAst& module, const SourceUnit& source, const CLConfig& cfg) {
  CognitiveLoadReport report;
  report.file = source.path();
  report.capacity = cfg.capacity;
  report.line_limit = cfg.line_limit;
  report.depth_budget = cfg.depth_budget;

  const CallGraphInfo calls = call_depth(module);
  report.call_max_depth = calls.max_depth;
  report.recursive_names = calls.recursive;

  const ScopeTable scopes(module);
  std::map<std::string, LivenessMap> live;
  if (module.has_top_level_code()) live.emplace(kModuleScope, liveness(build_module_cfg(module), cfg.capacity));
  for (const FunctionInfo& fi : scopes.functions()) {
    live.emplace(fi.qualified, liveness(build_cfg(*fi.def, fi.path), cfg.capacity));
  }

  Rational nest_excess(0);
  for (const NestingProfile& p : nesting_profile(module)) {
    const LivenessMap& lm = live.at(p.name);
    report.functions.push_back(FunctionMetrics{p.name, p.max_nesting, p.mean_nesting, lm.peak_live,
                                               static_cast<int>(lm.overload_points.size())});
    nest_excess += Rational(std::max(0, p.max_nesting - 1));
  }
  report.overlong_lines = overlong_lines(source, cfg.line_limit);

  report.composite_score = cfg.w_nest * nest_excess + cfg.w_wm * Rational(report.total_overload()) +
                           cfg.w_call * Rational(std::max(0, report.call_max_depth - cfg.depth_budget)) +
                           cfg.w_line * Rational(static_cast<std::int64_t>(report.overlong_lines.size()));
  report.intrinsic = {"max_nesting", "mean_nesting", "call_max_depth", "peak_live", "overload_count"};
  report.extraneous = {"overlong_lines"};
  return report;
}

nlohmann::ordered_json score_to_json(const Rational& score) {
  if (score.is_integer()) return score.num();
  return score.to_double();
}

nlohmann::ordered_json CognitiveLoadReport::to_json() const {
  nlohmann::ordered_json fns = nlohmann::ordered_json::array();
  for (const auto& f : functions) {
    fns.push_back({{"name", f.name},
                   {"max_nesting", f.max_nesting},
                   {"mean_nesting", f.mean_nesting},
                   {"peak_live", f.peak_live},
                   {"overload_count", f.overload_count}});
  }
  nlohmann::ordered_json lines = nlohmann::ordered_json::array();
  for (const auto& l : overlong_lines) lines.push_back({{"line", l.line}, {"length", l.length}});
  return nlohmann::ordered_json{
      {"file", file},
      {"composite_score", score_to_json(composite_score)},
      {"capacity", capacity},
      {"line_limit", line_limit},
      {"functions", fns},
      {"call", {{"max_depth", call_max_depth}, {"recursive", recursive_names}}},
      {"overlong_lines", lines},
      {"groups", {{"intrinsic", intrinsic}, {"extraneous", extraneous}}},
  };
}

}  // namespace cogniview::analysis
