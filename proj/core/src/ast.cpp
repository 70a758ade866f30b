#include "cogniview/ast.hpp"

#include <type_traits>

namespace cogniview::syntax {

std::string_view to_string(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "not"; }

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::FloorDiv: return "//";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

Precedence precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return Precedence::Or;
    case BinaryOp::And: return Precedence::And;
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return Precedence::Compare;
    case BinaryOp::Add:
    case BinaryOp::Sub: return Precedence::Additive;
    case BinaryOp::Mul:
    case BinaryOp::FloorDiv:
    case BinaryOp::Mod: return Precedence::Multiplicative;
  }
  return Precedence::Postfix;
}

std::vector<const FunctionDef*> FunctionDef::nested() const {
  std::vector<const FunctionDef*> out;
  for (const Stmt& s : body) {
    if (const auto* def = s.as<FunctionDef>()) out.push_back(def);
  }
  return out;
}

std::vector<const FunctionDef*> ModuleAst::functions() const {
  std::vector<const FunctionDef*> out;
  for (const Stmt& s : items) {
    if (const auto* def = s.as<FunctionDef>()) out.push_back(def);
  }
  return out;
}

const FunctionDef* ModuleAst::find_function(std::string_view name) const {
  for (const Stmt& s : items) {
    if (const auto* def = s.as<FunctionDef>(); def != nullptr && def->name == name) return def;
  }
  return nullptr;
}

bool ModuleAst::has_top_level_code() const {
  for (const Stmt& s : items) {
    if (s.as<FunctionDef>() == nullptr) return true;
  }
  return false;
}

StmtPath StmtPath::parent() const {
  StmtPath p = *this;
  if (!p.steps.empty()) p.steps.pop_back();
  return p;
}

StmtPath StmtPath::child(int block, std::size_t index) const {
  StmtPath p = *this;
  p.steps.push_back(PathStep{block, index});
  return p;
}

std::string StmtPath::to_string(const ModuleAst& module) const {
  std::string out;
  const Stmt* current = nullptr;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const PathStep& step = steps[i];
    if (i == 0) {
      out += std::to_string(step.index);
      current = step.index < module.items.size() ? &module.items[step.index] : nullptr;
      continue;
    }
    std::string label = "body";
    if (current != nullptr) {
      if (const auto* branch = current->as<If>()) {
        label = static_cast<std::size_t>(step.block) < branch->arms.size()
                    ? "arm" + std::to_string(step.block)
                    : "else";
      }
    }
    out += "." + label + "[" + std::to_string(step.index) + "]";
    const Block* block = current != nullptr ? child_block(*current, step.block) : nullptr;
    current = block != nullptr && step.index < block->size() ? &(*block)[step.index] : nullptr;
  }
  return out;
}

int child_block_count(const Stmt& stmt) {
  if (const auto* branch = stmt.as<If>()) {
    return static_cast<int>(branch->arms.size()) + (branch->has_else() ? 1 : 0);
  }
  if (stmt.as<While>() || stmt.as<For>() || stmt.as<FunctionDef>()) return 1;
  return 0;
}

Block* child_block(Stmt& stmt, int block) {
  return const_cast<Block*>(child_block(static_cast<const Stmt&>(stmt), block));
}

const Block* child_block(const Stmt& stmt, int block) {
  if (block < 0) return nullptr;
  if (const auto* branch = stmt.as<If>()) {
    const auto arms = static_cast<int>(branch->arms.size());
    if (block < arms) return &branch->arms[static_cast<std::size_t>(block)].body;
    if (block == arms && branch->has_else()) return &branch->orelse;
    return nullptr;
  }
  if (block != 0) return nullptr;
  if (const auto* loop = stmt.as<While>()) return &loop->body;
  if (const auto* loop = stmt.as<For>()) return &loop->body;
  if (const auto* def = stmt.as<FunctionDef>()) return &def->body;
  return nullptr;
}

const Block* containing_block(const ModuleAst& module, const StmtPath& path) {
  if (path.steps.empty()) return nullptr;
  const Block* block = &module.items;
  for (std::size_t i = 0; i + 1 < path.steps.size(); ++i) {
    const PathStep& step = path.steps[i];
    if (step.index >= block->size()) return nullptr;
    block = child_block((*block)[step.index], path.steps[i + 1].block);
    if (block == nullptr) return nullptr;
  }
  return block;
}

Block* containing_block(ModuleAst& module, const StmtPath& path) {
  return const_cast<Block*>(containing_block(static_cast<const ModuleAst&>(module), path));
}

const Stmt* resolve(const ModuleAst& module, const StmtPath& path) {
  const Block* block = containing_block(module, path);
  if (block == nullptr || path.steps.back().index >= block->size()) return nullptr;
  return &(*block)[path.steps.back().index];
}

Stmt* resolve(ModuleAst& module, const StmtPath& path) {
  return const_cast<Stmt*>(resolve(static_cast<const ModuleAst&>(module), path));
}

void walk_block(const Block& block, const StmtPath& parent, int block_id,
                const std::function<void(const StmtPath&, const Stmt&)>& visit) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    const StmtPath path = parent.child(block_id, i);
    const Stmt& stmt = block[i];
    visit(path, stmt);
    for (int b = 0; b < child_block_count(stmt); ++b) {
      if (const Block* child = child_block(stmt, b)) walk_block(*child, path, b, visit);
    }
  }
}

void walk(const ModuleAst& module,
          const std::function<void(const StmtPath&, const Stmt&)>& visit) {
  walk_block(module.items, StmtPath{}, 0, visit);
}

void for_each_own_expr(const Stmt& stmt, const std::function<void(const Expr&)>& visit) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Assign>) {
          if (node.index) visit(*node.index);
          visit(node.value);
        } else if constexpr (std::is_same_v<T, If>) {
          for (const IfArm& arm : node.arms) visit(arm.cond);
        } else if constexpr (std::is_same_v<T, While>) {
          visit(node.cond);
        } else if constexpr (std::is_same_v<T, For>) {
          for (const Expr& e : node.range_args) visit(e);
        } else if constexpr (std::is_same_v<T, Return>) {
          if (node.value) visit(*node.value);
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          visit(node.expr);
        }
      },
      stmt.node);
}

void for_each_own_expr(Stmt& stmt, const std::function<void(Expr&)>& visit) {
  for_each_own_expr(static_cast<const Stmt&>(stmt),
                    [&](const Expr& e) { visit(const_cast<Expr&>(e)); });
}

void walk_expr(const Expr& expr, const std::function<void(const Expr&)>& visit) {
  visit(expr);
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ListLit>) {
          for (const Expr& e : node.elements) walk_expr(e, visit);
        } else if constexpr (std::is_same_v<T, Index>) {
          walk_expr(*node.base, visit);
          walk_expr(*node.index, visit);
        } else if constexpr (std::is_same_v<T, Unary>) {
          walk_expr(*node.operand, visit);
        } else if constexpr (std::is_same_v<T, Binary>) {
          walk_expr(*node.lhs, visit);
          walk_expr(*node.rhs, visit);
        } else if constexpr (std::is_same_v<T, Call>) {
          for (const Expr& e : node.args) walk_expr(e, visit);
        }
      },
      expr.node);
}

void walk_expr(Expr& expr, const std::function<void(Expr&)>& visit) {
  walk_expr(static_cast<const Expr&>(expr),
            [&](const Expr& e) { visit(const_cast<Expr&>(e)); });
}

bool is_builtin(std::string_view name) { return name == "print" || name == "len"; }

bool is_reserved_function_name(std::string_view name) {
  return is_builtin(name) || name == "range";
}

Expr make_expr(Expr::Node node, Span span) { return Expr{std::move(node), span}; }
Stmt make_stmt(Stmt::Node node, Span span) { return Stmt{std::move(node), span}; }

}  // namespace cogniview::syntax
