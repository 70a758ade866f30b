#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cogniview/ast.hpp"

namespace cogniview::syntax {

struct FunctionInfo {
  const FunctionDef* def = nullptr;
  std::string qualified;       // "outer.inner" for nested definitions
  StmtPath path;               // path of the `def` statement
  int parent = -1;             // index into ScopeTable::functions(), -1 at top level
};

/// Static function-name resolution. Inside a function the visible callees are
/// its own directly nested definitions, then module-level functions; top-level
/// code sees only module-level functions. Holds pointers into the module,
/// which must outlive the table.
class ScopeTable {
 public:
  explicit ScopeTable(const ModuleAst& module);

  /// All definitions in pre-order (document order).
  [[nodiscard]] const std::vector<FunctionInfo>& functions() const { return functions_; }
  [[nodiscard]] const FunctionInfo* info(const FunctionDef* def) const;
  [[nodiscard]] int index_of(const FunctionDef* def) const;

  /// `caller == nullptr` means top-level code. Returns nullptr for builtins
  /// and unknown names.
  [[nodiscard]] const FunctionDef* resolve(const FunctionDef* caller, std::string_view name) const;

 private:
  void collect(const Block& block, const StmtPath& parent_path, int parent);

  std::vector<FunctionInfo> functions_;
  std::map<const FunctionDef*, int> index_;
  std::map<std::string, const FunctionDef*, std::less<>> top_level_;
};

/// Visits every call expression in the statements owned by one scope: the
/// function's body without descending into nested definitions, or the
/// module's top-level code when `def == nullptr`.
void for_each_call_in_scope(const ModuleAst& module, const FunctionDef* def,
                            const std::function<void(const Call&, const Span&)>& visit);

/// Statements owned by a scope (nested definitions' bodies excluded, the
/// `def` statements themselves included).
void walk_scope(const Block& body, const std::function<void(const Stmt&)>& visit);

}  // namespace cogniview::syntax
