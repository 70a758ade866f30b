#include "cogniview/scope.hpp"

namespace cogniview::syntax {

ScopeTable::ScopeTable(const ModuleAst& module) {
  collect(module.items, StmtPath{}, -1);
  for (const Stmt& s : module.items) {
    if (const auto* def = s.as<FunctionDef>()) top_level_.emplace(def->name, def);
  }
}

void ScopeTable::collect(const Block& block, const StmtPath& parent_path, int parent) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    const auto* def = block[i].as<FunctionDef>();
    if (def == nullptr) continue;
    FunctionInfo fi;
    fi.def = def;
    fi.path = parent_path.child(0, i);
    fi.parent = parent;
    fi.qualified = parent < 0 ? def->name : functions_[static_cast<std::size_t>(parent)].qualified + "." + def->name;
    const int self = static_cast<int>(functions_.size());
    index_.emplace(def, self);
    StmtPath own = fi.path;
    functions_.push_back(std::move(fi));
    collect(def->body, own, self);
  }
}

const FunctionInfo* ScopeTable::info(const FunctionDef* def) const {
  const int i = index_of(def);
  return i < 0 ? nullptr : &functions_[static_cast<std::size_t>(i)];
}

int ScopeTable::index_of(const FunctionDef* def) const {
  const auto it = index_.find(def);
  return it == index_.end() ? -1 : it->second;
}

const FunctionDef* ScopeTable::resolve(const FunctionDef* caller, std::string_view name) const {
  if (caller != nullptr) {
    for (const Stmt& s : caller->body) {
      if (const auto* def = s.as<FunctionDef>(); def != nullptr && def->name == name) return def;
    }
  }
  const auto it = top_level_.find(name);
  return it == top_level_.end() ? nullptr : it->second;
}

void walk_scope(const Block& body, const std::function<void(const Stmt&)>& visit) {
  for (const Stmt& s : body) {
    visit(s);
    if (s.as<FunctionDef>() != nullptr) continue;
    for (int b = 0; b < child_block_count(s); ++b) walk_scope(*child_block(s, b), visit);
  }
}

void for_each_call_in_scope(const ModuleAst& module, const FunctionDef* def,
                            const std::function<void(const Call&, const Span&)>& visit) {
  const Block& body = def != nullptr ? def->body : module.items;
  walk_scope(body, [&](const Stmt& s) {
    if (s.as<FunctionDef>() != nullptr) return;
    for_each_own_expr(s, [&](const Expr& e) {
      walk_expr(e, [&](const Expr& sub) {
        if (const auto* call = sub.as<Call>()) visit(*call, sub.span);
      });
    });
  });
}

}  // namespace cogniview::syntax
