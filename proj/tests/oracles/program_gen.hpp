#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cogniview/ast.hpp"

namespace cvtest::gen {

namespace s = cogniview::syntax;

/// Random but well-formed MiniPy: every generated module passes the static
/// checks (names in nested functions come only from their own parameters).
class ProgramGen {
 public:
  explicit ProgramGen(std::uint64_t seed) : rng_(seed) {}

  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return pick(100) < percent; }

  s::Expr expr(const std::vector<std::string>& names, int depth) {
    if (depth <= 0 || chance(30)) return leaf(names);
    switch (pick(6)) {
      case 0:
        return s::make_expr(s::Unary{chance(50) ? s::UnaryOp::Neg : s::UnaryOp::Not, expr(names, depth - 1)});
      case 1: {
        std::vector<s::Expr> items;
        for (int i = pick(4); i > 0; --i) items.push_back(expr(names, depth - 1));
        return s::make_expr(s::ListLit{std::move(items)});
      }
      case 2:
        return s::make_expr(s::Index{expr(names, depth - 1), expr(names, depth - 1)});
      case 3: {
        std::vector<s::Expr> args;
        args.push_back(expr(names, depth - 1));
        return s::make_expr(s::Call{chance(50) ? "len" : "print", std::move(args)});
      }
      default: {
        const auto op = static_cast<s::BinaryOp>(pick(13));
        return s::make_expr(s::Binary{op, expr(names, depth - 1), expr(names, depth - 1)});
      }
    }
  }

  s::Block block(const std::vector<std::string>& names, int depth, bool in_fn, bool in_loop, bool allow_def) {
    s::Block out;
    const int n = 1 + pick(3);
    for (int i = 0; i < n; ++i) out.push_back(stmt(names, depth, in_fn, in_loop, allow_def));
    return out;
  }

  s::Stmt stmt(const std::vector<std::string>& names, int depth, bool in_fn, bool in_loop, bool allow_def) {
    const int roll = pick(depth > 0 ? 12 : 6);
    switch (roll) {
      case 0:
        return s::make_stmt(s::Assign{name(names), std::nullopt, expr(names, 2)});
      case 1:
        return s::make_stmt(s::Assign{name(names), expr(names, 1), expr(names, 2)});
      case 2:
        return s::make_stmt(s::ExprStmt{expr(names, 2)});
      case 3:
        if (in_fn) {
          return s::make_stmt(s::Return{chance(70) ? std::optional<s::Expr>(expr(names, 2)) : std::nullopt});
        }
        return s::make_stmt(s::Pass{});
      case 4:
        if (in_loop) return s::make_stmt(chance(50) ? s::Stmt::Node(s::Break{}) : s::Stmt::Node(s::Continue{}));
        return s::make_stmt(s::Pass{});
      case 5:
        return s::make_stmt(s::Pass{});
      case 6:
      case 7: {
        s::If node;
        const int arms = 1 + pick(3);
        for (int a = 0; a < arms; ++a) {
          node.arms.push_back(s::IfArm{expr(names, 2), block(names, depth - 1, in_fn, in_loop, false), {}});
        }
        if (chance(50)) node.orelse = block(names, depth - 1, in_fn, in_loop, false);
        return s::make_stmt(std::move(node));
      }
      case 8:
        return s::make_stmt(s::While{expr(names, 2), block(names, depth - 1, in_fn, true, false)});
      case 9: {
        std::vector<s::Expr> args;
        for (int i = 1 + pick(3); i > 0; --i) args.push_back(expr(names, 1));
        return s::make_stmt(s::For{name(names), std::move(args), block(names, depth - 1, in_fn, true, false)});
      }
      default:
        if (allow_def) return s::make_stmt(function("h" + std::to_string(next_fn_++), depth - 1, true));
        return s::make_stmt(s::Pass{});
    }
  }

  s::FunctionDef function(const std::string& fname, int depth, bool nested = false) {
    s::FunctionDef fn;
    fn.name = fname;
    const int arity = pick(3);
    const std::string prefix = nested ? "q" : "p";
    for (int i = 0; i < arity; ++i) fn.params.push_back(prefix + std::to_string(i));
    std::vector<std::string> names = fn.params;
    names.emplace_back(nested ? "u" : "v");
    names.emplace_back(nested ? "z" : "w");
    fn.body = block(names, depth, true, false, !nested);
    return fn;
  }

  s::ModuleAst module() {
    s::ModuleAst m;
    const std::vector<std::string> names{"a", "b", "c"};
    const int n = 1 + pick(4);
    for (int i = 0; i < n; ++i) {
      if (chance(40)) {
        m.items.push_back(s::make_stmt(function("f" + std::to_string(i), 3)));
      } else {
        m.items.push_back(stmt(names, 3, false, false, false));
      }
    }
    return m;
  }

 private:
  s::Expr leaf(const std::vector<std::string>& names) {
    switch (pick(5)) {
      case 0:
        return s::make_expr(s::IntLit{static_cast<std::int64_t>(pick(20))});
      case 1: {
        static const char* const kStrings[] = {"", "ab", "x y", "q\"t", "n\\l", "line\nbreak", "\xc3\xa9t\xc3\xa9"};
        return s::make_expr(s::StrLit{kStrings[pick(7)]});
      }
      case 2:
        return s::make_expr(chance(50) ? s::Expr::Node(s::BoolLit{chance(50)}) : s::Expr::Node(s::NoneLit{}));
      default:
        return s::make_expr(s::Name{name(names)});
    }
  }

  std::string name(const std::vector<std::string>& names) {
    return names[static_cast<std::size_t>(pick(static_cast<int>(names.size())))];
  }

  std::mt19937_64 rng_;
  int next_fn_ = 0;
};

}  // namespace cvtest::gen
