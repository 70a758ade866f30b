#include "cogniview/refactor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cogniview/cfg.hpp"
#include "cogniview/metrics.hpp"
#include "cogniview/scope.hpp"
#include "cogniview/source.hpp"
#include "cogniview/wrap.hpp"

namespace cogniview::refactor {

using namespace cogniview::syntax;
using analysis::Cfg;
using analysis::CfgNode;
using analysis::NodeKind;

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::GuardClause: return "GuardClause";
    case TransformKind::LoopContinue: return "LoopContinue";
    case TransformKind::LiftNested: return "LiftNested";
    case TransformKind::InlineSingleCall: return "InlineSingleCall";
    case TransformKind::SplitWebs: return "SplitWebs";
  }
  return "?";
}

std::string TransformationCandidate::site_label(const ModuleAst& module) const {
  return site.empty() ? std::string(analysis::kModuleScope) : site.to_string(module);
}

Rational view_score(const ModuleAst& module, const analysis::CLConfig& cfg) {
  const emit::WrapResult wrapped = emit::wrap_lines(module, cfg);
  const SourceUnit source("<view>", wrapped.text());
  return analysis::cl_report(module, source, cfg).composite_score;
}

bool ends_in_return(const Block& block) {
  if (block.empty()) return false;
  const Stmt& last = block.back();
  if (last.as<Return>() != nullptr) return true;
  const auto* branch = last.as<If>();
  if (branch == nullptr || !branch->has_else()) return false;
  for (const IfArm& arm : branch->arms) {
    if (!ends_in_return(arm.body)) return false;
  }
  return ends_in_return(branch->orelse);
}

namespace {

[[noreturn]] void stale(const std::string& what) {
  throw Error(ErrorKind::StaleCandidate, what);
}

/// Innermost function whose body (transitively) contains the statement at
/// `path`; nullptr for top-level code.
const FunctionDef* enclosing_function(const ModuleAst& module, const StmtPath& path) {
  const FunctionDef* fn = nullptr;
  StmtPath prefix;
  for (std::size_t i = 0; i + 1 < path.steps.size(); ++i) {
    prefix.steps.push_back(path.steps[i]);
    if (const auto* def = resolve(module, prefix)->as<FunctionDef>()) fn = def;
  }
  return fn;
}

const Stmt* parent_stmt(const ModuleAst& module, const StmtPath& path) {
  return path.steps.size() < 2 ? nullptr : resolve(module, path.parent());
}

bool is_last_in_parent(const ModuleAst& module, const StmtPath& path) {
  const Block* block = containing_block(module, path);
  return block != nullptr && path.steps.back().index + 1 == block->size();
}

// --- GuardClause / LoopContinue -------------------------------------------

bool has_else_part(const If& branch) { return branch.arms.size() > 1 || branch.has_else(); }

/// The code run when the first arm's test fails, as a block.
Block else_part(const If& branch, const Span& fallback) {
  if (branch.arms.size() == 1) return branch.orelse;
  If rest;
  rest.arms.assign(branch.arms.begin() + 1, branch.arms.end());
  rest.orelse = branch.orelse;
  rest.else_span = branch.else_span;
  const Span span = rest.arms.front().span.valid() ? rest.arms.front().span : fallback;
  return Block{make_stmt(std::move(rest), span)};
}

int block_nesting(const Block& block) {
  int best = 0;
  for (const Stmt& s : block) {
    for (int b = 0; b < child_block_count(s); ++b) best = std::max(best, 1 + block_nesting(*child_block(s, b)));
  }
  return best;
}

int block_size(const Block& block) {
  int n = 0;
  for (const Stmt& s : block) {
    ++n;
    for (int b = 0; b < child_block_count(s); ++b) n += block_size(*child_block(s, b));
  }
  return n;
}

bool guard_applies(const ModuleAst& module, const StmtPath& path, const Stmt& stmt) {
  const auto* branch = stmt.as<If>();
  if (branch == nullptr || !has_else_part(*branch)) return false;
  const Stmt* parent = parent_stmt(module, path);
  if (parent == nullptr || parent->as<FunctionDef>() == nullptr || !is_last_in_parent(module, path)) return false;
  return ends_in_return(branch->arms.front().body) || ends_in_return(else_part(*branch, stmt.span));
}

bool loop_continue_applies(const ModuleAst& module, const StmtPath& path, const Stmt& stmt) {
  const auto* branch = stmt.as<If>();
  if (branch == nullptr || has_else_part(*branch)) return false;
  const Stmt* parent = parent_stmt(module, path);
  if (parent == nullptr || (parent->as<While>() == nullptr && parent->as<For>() == nullptr)) return false;
  return is_last_in_parent(module, path);
}

Expr negate(const Expr& cond) {
  if (const auto* u = cond.as<Unary>(); u != nullptr && u->op == UnaryOp::Not) return *u->operand;
  return make_expr(Unary{UnaryOp::Not, cond}, cond.span);
}

void splice(Block& block, std::size_t index, Block replacement) {
  block.erase(block.begin() + static_cast<std::ptrdiff_t>(index));
  block.insert(block.begin() + static_cast<std::ptrdiff_t>(index), std::make_move_iterator(replacement.begin()),
               std::make_move_iterator(replacement.end()));
}

ModuleAst apply_guard(const ModuleAst& module, const StmtPath& site) {
  const Stmt* original = resolve(module, site);
  if (original == nullptr || !guard_applies(module, site, *original)) stale("GuardClause site is not a tail if/else");
  ModuleAst out = module;
  Block& block = *containing_block(out, site);
  const std::size_t index = site.steps.back().index;
  const Stmt stmt = block[index];
  const If& branch = *stmt.as<If>();
  const IfArm& first = branch.arms.front();
  Block then_block = first.body;
  Block other = else_part(branch, stmt.span);
  const bool then_returns = ends_in_return(then_block);
  const bool other_returns = ends_in_return(other);
  // Keep the lighter branch as the guard so the heavier one loses a level.
  bool invert = !then_returns;
  if (then_returns && other_returns) {
    const auto weight = [](const Block& b) { return std::make_pair(block_nesting(b), block_size(b)); };
    invert = weight(other) < weight(then_block);
  }
  If guard;
  Block rest;
  if (invert) {
    guard.arms.push_back(IfArm{negate(first.cond), std::move(other), first.span});
    rest = std::move(then_block);
  } else {
    guard.arms.push_back(IfArm{first.cond, std::move(then_block), first.span});
    rest = std::move(other);
  }
  Block replacement{make_stmt(std::move(guard), stmt.span)};
  replacement.insert(replacement.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
  splice(block, index, std::move(replacement));
  return out;
}

ModuleAst apply_loop_continue(const ModuleAst& module, const StmtPath& site) {
  const Stmt* original = resolve(module, site);
  if (original == nullptr || !loop_continue_applies(module, site, *original)) {
    stale("LoopContinue site is not a tail if inside a loop");
  }
  ModuleAst out = module;
  Block& block = *containing_block(out, site);
  const std::size_t index = site.steps.back().index;
  const Stmt stmt = block[index];
  const IfArm& arm = stmt.as<If>()->arms.front();
  If guard;
  guard.arms.push_back(IfArm{negate(arm.cond), Block{make_stmt(Continue{}, stmt.span)}, arm.span});
  Block replacement{make_stmt(std::move(guard), stmt.span)};
  replacement.insert(replacement.end(), arm.body.begin(), arm.body.end());
  splice(block, index, std::move(replacement));
  return out;
}

// --- LiftNested -------------------------------------------------------------

bool lift_applies(const StmtPath& path, const Stmt& stmt) {
  return stmt.as<FunctionDef>() != nullptr && path.steps.size() > 1;
}

void rename_calls(Block& body, const std::string& from, const std::string& to) {
  for (Stmt& s : body) {
    if (s.as<FunctionDef>() != nullptr) continue;
    for_each_own_expr(s, [&](Expr& e) {
      walk_expr(e, [&](Expr& sub) {
        if (auto* call = sub.as<Call>(); call != nullptr && call->callee == from) call->callee = to;
      });
    });
    for (int b = 0; b < child_block_count(s); ++b) rename_calls(*child_block(s, b), from, to);
  }
}

ModuleAst apply_lift(const ModuleAst& module, const StmtPath& site) {
  const Stmt* original = resolve(module, site);
  if (original == nullptr || !lift_applies(site, *original)) stale("LiftNested site is not a nested def");
  const Stmt* parent = parent_stmt(module, site);
  if (parent == nullptr || parent->as<FunctionDef>() == nullptr) stale("LiftNested parent is not a def");

  const FunctionDef& def = *original->as<FunctionDef>();
  std::set<std::string> taken;
  for (const FunctionDef* fn : module.functions()) taken.insert(fn->name);
  taken.insert("main");  // a top-level zero-parameter main would start running implicitly
  std::string name = def.name;
  if (taken.count(name) != 0) {
    for (const FunctionDef* sibling : parent->as<FunctionDef>()->nested()) taken.insert(sibling->name);
    bool found = false;
    for (int k = 1; k <= 1000 && !found; ++k) {
      name = def.name + "_L" + std::to_string(k);
      found = taken.count(name) == 0;
    }
    if (!found) {
      throw Error(ErrorKind::NameCollisionExhausted, "no free name for lifted function '" + def.name + "'",
                  original->span);
    }
  }

  ModuleAst out = module;
  Stmt lifted = *original;
  lifted.as<FunctionDef>()->name = name;
  FunctionDef& parent_def = *resolve(out, site.parent())->as<FunctionDef>();
  Block& body = parent_def.body;
  body.erase(body.begin() + static_cast<std::ptrdiff_t>(site.steps.back().index));
  if (body.empty()) body.push_back(make_stmt(Pass{}, original->span));
  if (name != def.name) rename_calls(body, def.name, name);
  out.items.insert(out.items.begin() + static_cast<std::ptrdiff_t>(site.steps.front().index), std::move(lifted));
  return out;
}

// --- InlineSingleCall -------------------------------------------------------

const Call* site_call(const Stmt& stmt) {
  if (const auto* e = stmt.as<ExprStmt>()) return e->expr.as<Call>();
  if (const auto* a = stmt.as<Assign>()) return a->value.as<Call>();
  return nullptr;
}

bool straight_line(const FunctionDef& fn) {
  if (fn.body.empty() || fn.body.back().as<Return>() == nullptr) return false;
  for (std::size_t i = 0; i + 1 < fn.body.size(); ++i) {
    const Stmt& s = fn.body[i];
    if (s.as<Assign>() == nullptr && s.as<ExprStmt>() == nullptr && s.as<Pass>() == nullptr) return false;
  }
  return true;
}

/// Resolution facts shared by every InlineSingleCall site in one module.
class InlineIndex {
 public:
  explicit InlineIndex(const ModuleAst& module) : module_(module), scopes_(module) {
    const auto count = [&](const FunctionDef* caller) {
      for_each_call_in_scope(module, caller, [&](const Call& call, const Span&) {
        if (const FunctionDef* target = scopes_.resolve(caller, call.callee)) ++calls_[target];
      });
    };
    count(nullptr);
    for (const FunctionInfo& fi : scopes_.functions()) count(fi.def);
    const FunctionDef* main_fn = module.find_function("main");
    if (main_fn != nullptr && main_fn->params.empty()) implicit_main_ = main_fn;
    for (const std::string& name : analysis::call_depth(module).recursive) recursive_.insert(name);
  }

  /// The callee to inline at `path`, or nullptr when the site does not qualify.
  const FunctionDef* callee_at(const StmtPath& path, const Stmt& stmt) const {
    const Call* call = site_call(stmt);
    if (call == nullptr || is_builtin(call->callee)) return nullptr;
    const FunctionDef* caller = enclosing_function(module_, path);
    const FunctionDef* callee = scopes_.resolve(caller, call->callee);
    if (callee == nullptr || callee == caller || callee == implicit_main_) return nullptr;
    const auto it = calls_.find(callee);
    if (it == calls_.end() || it->second != 1) return nullptr;
    if (recursive_.count(scopes_.info(callee)->qualified) != 0) return nullptr;
    if (!straight_line(*callee) || call->args.size() != callee->params.size()) return nullptr;
    // Calls inside the callee must mean the same thing at the call site.
    bool same_meaning = true;
    for_each_call_in_scope(module_, callee, [&](const Call& inner, const Span&) {
      if (is_builtin(inner.callee)) return;
      if (scopes_.resolve(callee, inner.callee) != scopes_.resolve(caller, inner.callee)) same_meaning = false;
    });
    return same_meaning ? callee : nullptr;
  }

 private:
  const ModuleAst& module_;
  ScopeTable scopes_;
  std::map<const FunctionDef*, int> calls_;
  std::set<std::string> recursive_;
  const FunctionDef* implicit_main_ = nullptr;
};

void collect_identifiers(const ModuleAst& module, std::set<std::string>& out) {
  walk(module, [&](const StmtPath&, const Stmt& s) {
    if (const auto* a = s.as<Assign>()) out.insert(a->target);
    if (const auto* f = s.as<For>()) out.insert(f->var);
    if (const auto* d = s.as<FunctionDef>()) {
      out.insert(d->name);
      out.insert(d->params.begin(), d->params.end());
    }
    for_each_own_expr(s, [&](const Expr& e) {
      walk_expr(e, [&](const Expr& sub) {
        if (const auto* n = sub.as<Name>()) out.insert(n->id);
      });
    });
  });
}

std::string inline_prefix(const ModuleAst& module) {
  std::set<std::string> names;
  collect_identifiers(module, names);
  for (int n = 1;; ++n) {
    const std::string prefix = "__inl_" + std::to_string(n) + "_";
    const auto it = names.lower_bound(prefix);
    if (it == names.end() || it->rfind(prefix, 0) != 0) return prefix;
  }
}

void prefix_names(Expr& expr, const std::string& prefix) {
  walk_expr(expr, [&](Expr& e) {
    if (auto* n = e.as<Name>()) n->id = prefix + n->id;
  });
}

bool is_literal(const Expr& e) {
  return e.as<IntLit>() != nullptr || e.as<StrLit>() != nullptr || e.as<BoolLit>() != nullptr ||
         e.as<NoneLit>() != nullptr;
}

ModuleAst apply_inline(const ModuleAst& module, const StmtPath& site, const std::string& detail) {
  const Stmt* original = resolve(module, site);
  if (original == nullptr) stale("InlineSingleCall site does not exist");
  const InlineIndex index(module);
  const FunctionDef* callee = index.callee_at(site, *original);
  if (callee == nullptr || callee->name != detail) stale("InlineSingleCall site no longer qualifies");

  const std::string prefix = inline_prefix(module);
  const Call& call = *site_call(*original);
  Block replacement;
  for (std::size_t i = 0; i < callee->params.size(); ++i) {
    replacement.push_back(make_stmt(Assign{prefix + callee->params[i], std::nullopt, call.args[i]}, original->span));
  }
  for (std::size_t i = 0; i + 1 < callee->body.size(); ++i) {
    Stmt s = callee->body[i];
    if (auto* a = s.as<Assign>()) a->target = prefix + a->target;
    for_each_own_expr(s, [&](Expr& e) { prefix_names(e, prefix); });
    replacement.push_back(std::move(s));
  }
  std::optional<Expr> result = callee->body.back().as<Return>()->value;
  if (result) prefix_names(*result, prefix);
  if (const auto* assign = original->as<Assign>()) {
    Expr value = result ? *result : make_expr(NoneLit{}, original->span);
    replacement.push_back(make_stmt(Assign{assign->target, assign->index, std::move(value)}, original->span));
  } else if (result && !is_literal(*result)) {
    replacement.push_back(make_stmt(ExprStmt{*result}, original->span));
  }
  if (replacement.empty()) replacement.push_back(make_stmt(Pass{}, original->span));

  ModuleAst out = module;
  splice(*containing_block(out, site), site.steps.back().index, std::move(replacement));
  return out;
}

// --- SplitWebs --------------------------------------------------------------

/// Document position of a CFG node, for ordering webs.
std::pair<StmtPath, int> node_position(const CfgNode& node) {
  return {node.path, static_cast<int>(node.kind) * 64 + node.arm};
}

struct Webs {
  // Per variable: web id of each defining node and each using node.
  std::map<std::string, std::map<int, int>> def_web;
  std::map<std::string, std::map<int, int>> use_web;
  // Per variable: new name per web id; the kept web maps to the old name.
  std::map<std::string, std::vector<std::string>> names;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

/// Def-use webs from reaching definitions over reachable nodes. The entry
/// node acts as a definition of every variable (parameters or unbound reads).
Webs compute_webs(const Cfg& cfg) {
  Webs webs;
  const std::size_t n = cfg.nodes.size();
  const auto preds = cfg.predecessors();
  std::set<std::string> all_names = cfg.variables();
  for (const std::string& var : cfg.variables()) {
    const auto defines = [&](std::size_t i) {
      return i == static_cast<std::size_t>(Cfg::kEntry) || (cfg.nodes[i].reachable && cfg.nodes[i].defs.count(var) != 0);
    };
    std::vector<std::set<int>> in(n);
    std::vector<std::set<int>> out(n);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!cfg.nodes[i].reachable) continue;
        std::set<int> next_in;
        for (const int p : preds[i]) {
          if (cfg.nodes[static_cast<std::size_t>(p)].reachable) {
            next_in.insert(out[static_cast<std::size_t>(p)].begin(), out[static_cast<std::size_t>(p)].end());
          }
        }
        std::set<int> next_out = defines(i) ? std::set<int>{static_cast<int>(i)} : next_in;
        if (next_in != in[i] || next_out != out[i]) {
          in[i] = std::move(next_in);
          out[i] = std::move(next_out);
          changed = true;
        }
      }
    }
    UnionFind uf(n);
    std::vector<int> users;
    for (std::size_t i = 0; i < n; ++i) {
      const CfgNode& node = cfg.nodes[i];
      if (!node.reachable || node.uses.count(var) == 0) continue;
      if (in[i].empty()) continue;
      users.push_back(static_cast<int>(i));
      for (const int d : in[i]) uf.unite(d, *in[i].begin());
    }
    std::vector<int> definers;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != static_cast<std::size_t>(Cfg::kEntry) && defines(i)) definers.push_back(static_cast<int>(i));
    }
    // Group roots; the entry web counts only when something reads it.
    std::map<int, std::pair<std::pair<StmtPath, int>, bool>> roots;  // root → (first position, has entry)
    const auto note = [&](int node) {
      const int root = uf.find(node);
      const auto pos = node == Cfg::kEntry ? std::make_pair(StmtPath{}, -1) : node_position(cfg.nodes[static_cast<std::size_t>(node)]);
      auto [it, inserted] = roots.try_emplace(root, pos, node == Cfg::kEntry);
      if (!inserted) {
        it->second.first = std::min(it->second.first, pos);
        it->second.second = it->second.second || node == Cfg::kEntry;
      }
    };
    for (const int d : definers) note(d);
    for (const int u : users) {
      for (const int d : in[static_cast<std::size_t>(u)]) note(d);
    }
    std::vector<std::pair<std::pair<StmtPath, int>, int>> order;
    for (const auto& [root, info] : roots) order.push_back({info.first, root});
    std::sort(order.begin(), order.end());
    std::map<int, int> web_of_root;
    for (const auto& entry : order) web_of_root.emplace(entry.second, static_cast<int>(web_of_root.size()));
    if (web_of_root.size() < 2) continue;

    auto& names = webs.names[var];
    names.push_back(var);
    int suffix = 2;
    for (std::size_t w = 1; w < web_of_root.size(); ++w) {
      std::string fresh;
      do {
        fresh = var + "_" + std::to_string(suffix++);
      } while (all_names.count(fresh) != 0);
      all_names.insert(fresh);
      names.push_back(fresh);
    }
    for (const int d : definers) webs.def_web[var][d] = web_of_root.at(uf.find(d));
    for (const int u : users) webs.use_web[var][u] = web_of_root.at(uf.find(*in[static_cast<std::size_t>(u)].begin()));
  }
  return webs;
}

Cfg scope_cfg(const ModuleAst& module, const StmtPath& site) {
  if (site.empty()) return analysis::build_module_cfg(module);
  const Stmt* stmt = resolve(module, site);
  if (stmt == nullptr || stmt->as<FunctionDef>() == nullptr) stale("SplitWebs site is not a def");
  return analysis::build_cfg(*stmt->as<FunctionDef>(), site);
}

void rename_in(Expr& expr, const std::string& from, const std::string& to) {
  walk_expr(expr, [&](Expr& e) {
    if (auto* n = e.as<Name>(); n != nullptr && n->id == from) n->id = to;
  });
}

void rename_uses(Stmt& stmt, const CfgNode& node, const std::string& from, const std::string& to) {
  switch (node.kind) {
    case NodeKind::Cond:
      if (auto* branch = stmt.as<If>()) rename_in(branch->arms[static_cast<std::size_t>(node.arm)].cond, from, to);
      if (auto* loop = stmt.as<While>()) rename_in(loop->cond, from, to);
      return;
    case NodeKind::ForInit:
      for (Expr& arg : stmt.as<For>()->range_args) rename_in(arg, from, to);
      return;
    case NodeKind::Simple:
      if (auto* a = stmt.as<Assign>(); a != nullptr && a->index && a->target == from) a->target = to;
      for_each_own_expr(stmt, [&](Expr& e) { rename_in(e, from, to); });
      return;
    default:
      return;
  }
}

void rename_def(Stmt& stmt, const CfgNode& node, const std::string& to) {
  if (node.kind == NodeKind::ForBind) stmt.as<For>()->var = to;
  if (auto* a = stmt.as<Assign>(); a != nullptr && node.kind == NodeKind::Simple) a->target = to;
}

ModuleAst apply_split(const ModuleAst& module, const StmtPath& site, const std::string& var) {
  ModuleAst out = module;
  const Cfg cfg = scope_cfg(out, site);
  const Webs webs = compute_webs(cfg);
  const auto names = webs.names.find(var);
  if (names == webs.names.end()) stale("variable '" + var + "' no longer splits into webs");
  // Defs first: a node can use one web and define another (`t = t + 1`).
  static const std::map<int, int> kNone;
  const auto uses = webs.use_web.find(var);
  for (const auto& [node_id, web] : uses == webs.use_web.end() ? kNone : uses->second) {
    const CfgNode& node = cfg.nodes[static_cast<std::size_t>(node_id)];
    if (web != 0) rename_uses(*resolve(out, node.path), node, var, names->second[static_cast<std::size_t>(web)]);
  }
  for (const auto& [node_id, web] : webs.def_web.at(var)) {
    const CfgNode& node = cfg.nodes[static_cast<std::size_t>(node_id)];
    if (web != 0) rename_def(*resolve(out, node.path), node, names->second[static_cast<std::size_t>(web)]);
  }
  return out;
}

}  // namespace

std::vector<TransformationCandidate> find_sites(const ModuleAst& module) {
  std::vector<TransformationCandidate> guard;
  std::vector<TransformationCandidate> loop;
  std::vector<TransformationCandidate> lift;
  std::vector<TransformationCandidate> inl;
  const InlineIndex index(module);
  walk(module, [&](const StmtPath& path, const Stmt& stmt) {
    if (guard_applies(module, path, stmt)) guard.push_back({TransformKind::GuardClause, path, "", {}});
    if (loop_continue_applies(module, path, stmt)) loop.push_back({TransformKind::LoopContinue, path, "", {}});
    if (lift_applies(path, stmt)) lift.push_back({TransformKind::LiftNested, path, stmt.as<FunctionDef>()->name, {}});
    if (const FunctionDef* callee = index.callee_at(path, stmt)) {
      inl.push_back({TransformKind::InlineSingleCall, path, callee->name, {}});
    }
  });
  std::vector<TransformationCandidate> split;
  const auto add_webs = [&](const Cfg& cfg, const StmtPath& site) {
    for (const auto& [var, names] : compute_webs(cfg).names) split.push_back({TransformKind::SplitWebs, site, var, {}});
  };
  if (module.has_top_level_code()) add_webs(analysis::build_module_cfg(module), StmtPath{});
  const ScopeTable scopes(module);
  for (const FunctionInfo& fi : scopes.functions()) add_webs(analysis::build_cfg(*fi.def, fi.path), fi.path);

  std::vector<TransformationCandidate> all;
  for (auto* group : {&guard, &loop, &lift, &inl, &split}) all.insert(all.end(), group->begin(), group->end());
  return all;
}

std::vector<TransformationCandidate> enumerate_candidates(const ModuleAst& module, const analysis::CLConfig& cfg) {
  std::vector<TransformationCandidate> out;
  const Rational base = view_score(module, cfg);
  for (TransformationCandidate cand : find_sites(module)) {
    try {
      cand.predicted_delta = view_score(apply_transformation(module, cand), cfg) - base;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NameCollisionExhausted) throw;
      continue;
    }
    out.push_back(std::move(cand));
  }
  return out;
}

ModuleAst apply_transformation(const ModuleAst& module, const TransformationCandidate& cand) {
  if (cand.kind != TransformKind::SplitWebs && resolve(module, cand.site) == nullptr) {
    stale("candidate site " + cand.site.to_string(module) + " does not exist");
  }
  switch (cand.kind) {
    case TransformKind::GuardClause: return apply_guard(module, cand.site);
    case TransformKind::LoopContinue: return apply_loop_continue(module, cand.site);
    case TransformKind::LiftNested: return apply_lift(module, cand.site);
    case TransformKind::InlineSingleCall: return apply_inline(module, cand.site, cand.detail);
    case TransformKind::SplitWebs: return apply_split(module, cand.site, cand.detail);
  }
  stale("unknown transformation kind");
}

}  // namespace cogniview::refactor
