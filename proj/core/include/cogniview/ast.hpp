#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cogniview/error.hpp"

namespace cogniview::syntax {

/// Owning, deep-copying pointer. Gives recursive AST nodes value semantics.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

enum class UnaryOp { Neg, Not };

enum class BinaryOp { Add, Sub, Mul, FloorDiv, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

std::string_view to_string(UnaryOp op);
std::string_view to_string(BinaryOp op);

/// Binding strength, loosest first. Used by the parser and by the printer to
/// decide where parentheses are required.
enum class Precedence { Or = 1, And, Not, Compare, Additive, Multiplicative, Unary, Postfix };

Precedence precedence(BinaryOp op);

struct Expr;

struct IntLit {
  std::int64_t value = 0;
  friend bool operator==(const IntLit&, const IntLit&) = default;
};
struct StrLit {
  std::string value;
  friend bool operator==(const StrLit&, const StrLit&) = default;
};
struct BoolLit {
  bool value = false;
  friend bool operator==(const BoolLit&, const BoolLit&) = default;
};
struct NoneLit {
  friend bool operator==(const NoneLit&, const NoneLit&) = default;
};
struct ListLit {
  std::vector<Expr> elements;
  friend bool operator==(const ListLit&, const ListLit&);
};
struct Name {
  std::string id;
  friend bool operator==(const Name&, const Name&) = default;
};
struct Index {
  Box<Expr> base;
  Box<Expr> index;
  friend bool operator==(const Index&, const Index&) = default;
};
struct Unary {
  UnaryOp op;
  Box<Expr> operand;
  friend bool operator==(const Unary&, const Unary&) = default;
};
struct Binary {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};
struct Call {
  std::string callee;
  std::vector<Expr> args;
  friend bool operator==(const Call&, const Call&);
};

/// Expression node. Equality is structural and ignores spans.
struct Expr {
  using Node = std::variant<IntLit, StrLit, BoolLit, NoneLit, ListLit, Name, Index, Unary, Binary, Call>;
  Node node;
  Span span;

  template <typename T>
  [[nodiscard]] const T* as() const { return std::get_if<T>(&node); }
  template <typename T>
  [[nodiscard]] T* as() { return std::get_if<T>(&node); }

  friend bool operator==(const Expr& a, const Expr& b) { return a.node == b.node; }
};

inline bool operator==(const ListLit& a, const ListLit& b) { return a.elements == b.elements; }
inline bool operator==(const Call& a, const Call& b) {
  return a.callee == b.callee && a.args == b.args;
}

struct Stmt;
using Block = std::vector<Stmt>;

/// `name = value` or `name[index] = value`.
struct Assign {
  std::string target;
  std::optional<Expr> index;
  Expr value;
  friend bool operator==(const Assign&, const Assign&) = default;
};

struct IfArm {
  Expr cond;
  Block body;
  Span span;  // the `if` / `elif` keyword line
  friend bool operator==(const IfArm& a, const IfArm& b);
};

/// if / elif chain; an empty `orelse` means there is no else block.
struct If {
  std::vector<IfArm> arms;
  Block orelse;
  Span else_span;
  friend bool operator==(const If& a, const If& b);
  [[nodiscard]] bool has_else() const { return !orelse.empty(); }
};

struct While {
  Expr cond;
  Block body;
  friend bool operator==(const While& a, const While& b);
};

/// `for var in range(args...)`, 1 to 3 range arguments.
struct For {
  std::string var;
  std::vector<Expr> range_args;
  Block body;
  friend bool operator==(const For& a, const For& b);
};

struct Return {
  std::optional<Expr> value;
  friend bool operator==(const Return&, const Return&) = default;
};
struct Break {
  friend bool operator==(const Break&, const Break&) = default;
};
struct Continue {
  friend bool operator==(const Continue&, const Continue&) = default;
};
struct Pass {
  friend bool operator==(const Pass&, const Pass&) = default;
};
struct ExprStmt {
  Expr expr;
  friend bool operator==(const ExprStmt&, const ExprStmt&) = default;
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  Block body;
  friend bool operator==(const FunctionDef& a, const FunctionDef& b);

  /// Function definitions appearing directly in this body, in order.
  [[nodiscard]] std::vector<const FunctionDef*> nested() const;
};

/// Statement node. Function definitions are statements so that module items
/// and function bodies keep their original interleaving. The span of a
/// compound statement covers its header line only.
struct Stmt {
  using Node =
      std::variant<Assign, If, While, For, Return, Break, Continue, Pass, ExprStmt, FunctionDef>;
  Node node;
  Span span;

  template <typename T>
  [[nodiscard]] const T* as() const { return std::get_if<T>(&node); }
  template <typename T>
  [[nodiscard]] T* as() { return std::get_if<T>(&node); }

  friend bool operator==(const Stmt& a, const Stmt& b) { return a.node == b.node; }
};

inline bool operator==(const IfArm& a, const IfArm& b) { return a.cond == b.cond && a.body == b.body; }
inline bool operator==(const If& a, const If& b) { return a.arms == b.arms && a.orelse == b.orelse; }
inline bool operator==(const While& a, const While& b) { return a.cond == b.cond && a.body == b.body; }
inline bool operator==(const For& a, const For& b) {
  return a.var == b.var && a.range_args == b.range_args && a.body == b.body;
}
inline bool operator==(const FunctionDef& a, const FunctionDef& b) {
  return a.name == b.name && a.params == b.params && a.body == b.body;
}

/// A parsed program: top-level function definitions and statements.
struct ModuleAst {
  Block items;
  friend bool operator==(const ModuleAst& a, const ModuleAst& b) { return a.items == b.items; }

  [[nodiscard]] std::vector<const FunctionDef*> functions() const;
  [[nodiscard]] const FunctionDef* find_function(std::string_view name) const;
  [[nodiscard]] bool has_top_level_code() const;
};

// ---------------------------------------------------------------------------
// Addressing statements inside a module.

/// One hop of a statement path: which child block of the current statement
/// (0 for bodies; k for the k-th if arm; arms.size() for else) and the index
/// within that block. The first step addresses `ModuleAst::items` (block 0).
struct PathStep {
  int block = 0;
  std::size_t index = 0;
  friend auto operator<=>(const PathStep&, const PathStep&) = default;
};

struct StmtPath {
  std::vector<PathStep> steps;
  friend auto operator<=>(const StmtPath&, const StmtPath&) = default;

  [[nodiscard]] bool empty() const { return steps.empty(); }
  [[nodiscard]] StmtPath parent() const;
  [[nodiscard]] StmtPath child(int block, std::size_t index) const;
  /// e.g. "2.body[0].arm1[3].else[0]"
  [[nodiscard]] std::string to_string(const ModuleAst& module) const;
};

/// Number of child blocks of a statement (bodies, arms, else).
int child_block_count(const Stmt& stmt);
const Block* child_block(const Stmt& stmt, int block);
Block* child_block(Stmt& stmt, int block);

const Stmt* resolve(const ModuleAst& module, const StmtPath& path);
Stmt* resolve(ModuleAst& module, const StmtPath& path);
/// Block containing the statement at `path` (the path's last index points into it).
const Block* containing_block(const ModuleAst& module, const StmtPath& path);
Block* containing_block(ModuleAst& module, const StmtPath& path);

/// Pre-order walk over every statement, nested blocks and function bodies
/// included.
void walk(const ModuleAst& module,
          const std::function<void(const StmtPath&, const Stmt&)>& visit);
/// Walks `block`, which is child block `block_id` of the statement at
/// `parent` (an empty parent means module items).
void walk_block(const Block& block, const StmtPath& parent, int block_id,
                const std::function<void(const StmtPath&, const Stmt&)>& visit);

/// Visits every expression directly owned by a statement (not those of
/// statements in its child blocks).
void for_each_own_expr(const Stmt& stmt, const std::function<void(const Expr&)>& visit);
void for_each_own_expr(Stmt& stmt, const std::function<void(Expr&)>& visit);
/// Pre-order walk over an expression tree.
void walk_expr(const Expr& expr, const std::function<void(const Expr&)>& visit);
void walk_expr(Expr& expr, const std::function<void(Expr&)>& visit);

/// Builtin functions callable without a definition.
bool is_builtin(std::string_view name);
/// Names that user functions may not take (builtins and `range`).
bool is_reserved_function_name(std::string_view name);

// Constructors used by the parser tests and transformations.
Expr make_expr(Expr::Node node, Span span = {});
Stmt make_stmt(Stmt::Node node, Span span = {});

}  // namespace cogniview::syntax
