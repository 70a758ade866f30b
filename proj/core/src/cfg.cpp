#include "cogniview/cfg.hpp"

#include <deque>

namespace cogniview::analysis {

using namespace cogniview::syntax;

namespace {

struct LoopTargets {
  int head = -1;
  int after = -1;
};

class CfgBuilder {
 public:
  CfgBuilder() {
    cfg_.nodes.emplace_back().kind = NodeKind::Entry;
    cfg_.nodes.emplace_back().kind = NodeKind::Exit;
  }

  Cfg finish(int first, const std::vector<std::string>& params) {
    cfg_.nodes[Cfg::kEntry].defs.insert(params.begin(), params.end());
    cfg_.nodes[Cfg::kEntry].succs.push_back(first);
    std::deque<int> work{Cfg::kEntry};
    cfg_.nodes[Cfg::kEntry].reachable = true;
    while (!work.empty()) {
      const int n = work.front();
      work.pop_front();
      for (const int s : cfg_.nodes[static_cast<std::size_t>(n)].succs) {
        auto& node = cfg_.nodes[static_cast<std::size_t>(s)];
        if (!node.reachable) {
          node.reachable = true;
          work.push_back(s);
        }
      }
    }
    return std::move(cfg_);
  }

  /// Builds `block` (child block `block_id` of `parent`) so that control
  /// continues at `next` afterwards; returns the block's first node.
  int block(const Block& stmts, const StmtPath& parent, int block_id, int next,
            const LoopTargets& loop) {
    for (std::size_t i = stmts.size(); i-- > 0;) {
      next = statement(stmts[i], parent.child(block_id, i), next, loop);
    }
    return next;
  }

 private:
  int add(NodeKind kind, const Stmt& s, const StmtPath& path) {
    CfgNode node;
    node.kind = kind;
    node.stmt = &s;
    node.path = path;
    cfg_.nodes.push_back(std::move(node));
    return static_cast<int>(cfg_.nodes.size()) - 1;
  }
  CfgNode& at(int id) { return cfg_.nodes[static_cast<std::size_t>(id)]; }

  int statement(const Stmt& s, const StmtPath& path, int next, const LoopTargets& loop) {
    if (const auto* a = s.as<Assign>()) {
      const int n = add(NodeKind::Simple, s, path);
      collect_uses(a->value, at(n).uses);
      if (a->index) {
        collect_uses(*a->index, at(n).uses);
        at(n).uses.insert(a->target);
      } else {
        at(n).defs.insert(a->target);
      }
      at(n).succs.push_back(next);
      return n;
    }
    if (const auto* e = s.as<ExprStmt>()) {
      const int n = add(NodeKind::Simple, s, path);
      collect_uses(e->expr, at(n).uses);
      at(n).succs.push_back(next);
      return n;
    }
    if (const auto* r = s.as<Return>()) {
      const int n = add(NodeKind::Simple, s, path);
      if (r->value) collect_uses(*r->value, at(n).uses);
      at(n).succs.push_back(Cfg::kExit);
      return n;
    }
    if (s.as<Break>() != nullptr) {
      const int n = add(NodeKind::Simple, s, path);
      at(n).succs.push_back(loop.after);
      return n;
    }
    if (s.as<Continue>() != nullptr) {
      const int n = add(NodeKind::Simple, s, path);
      at(n).succs.push_back(loop.head);
      return n;
    }
    if (const auto* branch = s.as<If>()) {
      int false_target = next;
      if (branch->has_else()) {
        false_target = block(branch->orelse, path, static_cast<int>(branch->arms.size()), next, loop);
      }
      for (std::size_t k = branch->arms.size(); k-- > 0;) {
        const int body = block(branch->arms[k].body, path, static_cast<int>(k), next, loop);
        const int c = add(NodeKind::Cond, s, path);
        at(c).arm = static_cast<int>(k);
        collect_uses(branch->arms[k].cond, at(c).uses);
        at(c).succs = {body, false_target};
        false_target = c;
      }
      return false_target;
    }
    if (const auto* w = s.as<While>()) {
      const int c = add(NodeKind::Cond, s, path);
      collect_uses(w->cond, at(c).uses);
      const int body = block(w->body, path, 0, c, LoopTargets{c, next});
      at(c).succs = {body, next};
      return c;
    }
    if (const auto* f = s.as<For>()) {
      const int init = add(NodeKind::ForInit, s, path);
      for (const Expr& arg : f->range_args) collect_uses(arg, at(init).uses);
      const int head = add(NodeKind::ForNext, s, path);
      const int bind = add(NodeKind::ForBind, s, path);
      at(bind).defs.insert(f->var);
      const int body = block(f->body, path, 0, head, LoopTargets{head, next});
      at(init).succs = {head};
      at(head).succs = {bind, next};
      at(bind).succs = {body};
      return init;
    }
    // pass, nested def: no data flow.
    const int n = add(NodeKind::Simple, s, path);
    at(n).succs.push_back(next);
    return n;
  }

  Cfg cfg_;
};

}  // namespace

void collect_uses(const Expr& expr, NameSet& out) {
  walk_expr(expr, [&](const Expr& e) {
    if (const auto* n = e.as<Name>()) out.insert(n->id);
  });
}

std::vector<std::vector<int>> Cfg::predecessors() const {
  std::vector<std::vector<int>> preds(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    for (const int s : nodes[n].succs) preds[static_cast<std::size_t>(s)].push_back(static_cast<int>(n));
  }
  return preds;
}

NameSet Cfg::variables() const {
  NameSet out;
  for (const CfgNode& n : nodes) {
    out.insert(n.defs.begin(), n.defs.end());
    out.insert(n.uses.begin(), n.uses.end());
  }
  return out;
}

Cfg build_cfg(const FunctionDef& fn, const StmtPath& def_path) {
  CfgBuilder b;
  const int first = b.block(fn.body, def_path, 0, Cfg::kExit, LoopTargets{});
  return b.finish(first, fn.params);
}

Cfg build_module_cfg(const ModuleAst& module) {
  CfgBuilder b;
  const int first = b.block(module.items, StmtPath{}, 0, Cfg::kExit, LoopTargets{});
  return b.finish(first, {});
}

}  // namespace cogniview::analysis
