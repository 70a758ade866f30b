#pragma once

#include <set>
#include <string>
#include <vector>

#include "cogniview/ast.hpp"

namespace cogniview::analysis {

enum class NodeKind {
  Entry,
  Exit,
  Simple,   // assignment, expression statement, return, break, continue, pass, def
  Cond,     // one `if`/`elif` arm test or a `while` test
  ForInit,  // evaluates the range arguments
  ForNext,  // loop head: more iterations?
  ForBind,  // binds the loop variable
};

using NameSet = std::set<std::string>;

struct CfgNode {
  NodeKind kind = NodeKind::Simple;
  const syntax::Stmt* stmt = nullptr;
  syntax::StmtPath path;  // module-absolute path of `stmt`
  int arm = -1;           // arm index for Cond nodes of an `if`
  NameSet defs;
  NameSet uses;
  std::vector<int> succs;
  bool reachable = false;
};

/// Statement-granular control-flow graph of one scope. Node 0 is the entry,
/// node 1 the exit. Dead statements (after return/break/continue) get nodes
/// too; they are flagged `reachable == false`.
struct Cfg {
  std::vector<CfgNode> nodes;
  static constexpr int kEntry = 0;
  static constexpr int kExit = 1;

  [[nodiscard]] std::vector<std::vector<int>> predecessors() const;
  /// Every variable name defined or used anywhere in the scope.
  [[nodiscard]] NameSet variables() const;
};

/// CFG of a function body. `def_path` is the path of the `def` statement; the
/// entry node defines the parameters.
Cfg build_cfg(const syntax::FunctionDef& fn, const syntax::StmtPath& def_path);

/// CFG of the module's top-level statements (function definitions are no-ops).
Cfg build_module_cfg(const syntax::ModuleAst& module);

/// Names read by an expression (call arguments included, callee names not).
void collect_uses(const syntax::Expr& expr, NameSet& out);

}  // namespace cogniview::analysis
