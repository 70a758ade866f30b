#include "cogniview/printer.hpp"

#include <algorithm>

namespace cogniview::syntax {
namespace {

Precedence expr_precedence(const Expr& e) {
  if (const auto* b = e.as<Binary>()) return precedence(b->op);
  if (const auto* u = e.as<Unary>()) return u->op == UnaryOp::Not ? Precedence::Not : Precedence::Unary;
  return Precedence::Postfix;
}

Precedence next(Precedence p) { return static_cast<Precedence>(static_cast<int>(p) + 1); }

std::string quote(const std::string& value) {
  std::string out = "\"";
  for (const char c : value) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

class ExprRenderer {
 public:
  explicit ExprRenderer(std::vector<Piece>& out, int depth) : out_(out), depth_(depth) {}

  void emit(const Expr& e, Precedence min) {
    const bool parens = expr_precedence(e) < min;
    if (parens) open("(");
    emit_node(e);
    if (parens) close(")");
  }

  void token(std::string text, bool space_before, BreakKind brk = BreakKind::None, int tier = 0) {
    out_.push_back(Piece{std::move(text), space_before, depth_, brk, tier});
    space_next_ = false;
  }

  void word(std::string text) { token(std::move(text), take_space()); }

  void space() { space_next_ = true; }

 private:
  bool take_space() {
    const bool s = space_next_;
    space_next_ = false;
    return s;
  }

  void open(const char* bracket) {
    token(bracket, take_space());
    ++depth_;
  }
  void close(const char* bracket) {
    --depth_;
    token(bracket, false);
  }

  void list(const std::vector<Expr>& items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) {
        token(",", false, BreakKind::AfterComma, 0);
        space_next_ = true;
      }
      emit(items[i], Precedence::Or);
    }
  }

  void emit_node(const Expr& e) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            word(std::to_string(node.value));
          } else if constexpr (std::is_same_v<T, StrLit>) {
            word(quote(node.value));
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            word(node.value ? "True" : "False");
          } else if constexpr (std::is_same_v<T, NoneLit>) {
            word("None");
          } else if constexpr (std::is_same_v<T, Name>) {
            word(node.id);
          } else if constexpr (std::is_same_v<T, ListLit>) {
            open("[");
            list(node.elements);
            close("]");
          } else if constexpr (std::is_same_v<T, Index>) {
            emit(*node.base, Precedence::Postfix);
            open("[");
            emit(*node.index, Precedence::Or);
            close("]");
          } else if constexpr (std::is_same_v<T, Call>) {
            word(node.callee);
            open("(");
            list(node.args);
            close(")");
          } else if constexpr (std::is_same_v<T, Unary>) {
            if (node.op == UnaryOp::Not) {
              word("not");
              space_next_ = true;
              emit(*node.operand, Precedence::Not);
            } else {
              word("-");
              emit(*node.operand, Precedence::Unary);
            }
          } else if constexpr (std::is_same_v<T, Binary>) {
            const Precedence p = precedence(node.op);
            const bool compare = p == Precedence::Compare;
            emit(*node.lhs, compare ? next(p) : p);
            token(std::string(to_string(node.op)), true, BreakKind::BeforeOperator,
                  static_cast<int>(p));
            space_next_ = true;
            emit(*node.rhs, next(p));
          }
        },
        e.node);
  }

  std::vector<Piece>& out_;
  int depth_;
  bool space_next_ = false;
};

class LineBuilder {
 public:
  explicit LineBuilder(std::vector<RenderedLine>& lines) : lines_(lines) {}

  void block(const Block& stmts, int indent) {
    for (const Stmt& s : stmts) statement(s, indent);
  }

  void module(const Block& items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      const bool is_def = items[i].as<FunctionDef>() != nullptr;
      const bool prev_def = i > 0 && items[i - 1].as<FunctionDef>() != nullptr;
      if (i > 0 && (is_def || prev_def)) lines_.push_back(RenderedLine{});
      statement(items[i], 0);
    }
  }

 private:
  RenderedLine& start(int indent, const Span& origin, const Stmt* stmt) {
    lines_.push_back(RenderedLine{indent * 4, {}, origin, stmt, std::nullopt, false});
    return lines_.back();
  }

  static void keyword(RenderedLine& line, const std::string& text) {
    line.pieces.push_back(Piece{text, !line.pieces.empty(), 0, BreakKind::None, 0});
  }

  static void target(RenderedLine& line, const Expr& e) {
    const std::size_t begin = line.pieces.size();
    std::vector<Piece> pieces = render_expr(e);
    if (!pieces.empty()) pieces.front().space_before = begin > 0 && line.pieces.back().text != "(";
    line.pieces.insert(line.pieces.end(), pieces.begin(), pieces.end());
    line.wrap_target = std::make_pair(begin, line.pieces.size());
    line.target_bracketed = e.as<Binary>() == nullptr && e.as<Unary>() == nullptr;
  }

  static void expr_at_depth(RenderedLine& line, const Expr& e, int depth, bool space) {
    ExprRenderer r(line.pieces, depth);
    if (space) r.space();
    r.emit(e, Precedence::Or);
  }

  static void colon(RenderedLine& line) {
    line.pieces.push_back(Piece{":", false, 0, BreakKind::None, 0});
  }

  void statement(const Stmt& s, int indent) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Assign>) {
            RenderedLine& line = start(indent, s.span, &s);
            keyword(line, node.target);
            if (node.index) {
              line.pieces.push_back(Piece{"[", false, 0, BreakKind::None, 0});
              expr_at_depth(line, *node.index, 1, false);
              line.pieces.push_back(Piece{"]", false, 0, BreakKind::None, 0});
            }
            keyword(line, "=");
            target(line, node.value);
          } else if constexpr (std::is_same_v<T, If>) {
            for (std::size_t i = 0; i < node.arms.size(); ++i) {
              const IfArm& arm = node.arms[i];
              RenderedLine& line = start(indent, i == 0 ? s.span : arm.span, i == 0 ? &s : nullptr);
              keyword(line, i == 0 ? "if" : "elif");
              target(line, arm.cond);
              colon(line);
              block(arm.body, indent + 1);
            }
            if (node.has_else()) {
              RenderedLine& line = start(indent, node.else_span.valid() ? node.else_span : s.span, nullptr);
              keyword(line, "else");
              colon(line);
              block(node.orelse, indent + 1);
            }
          } else if constexpr (std::is_same_v<T, While>) {
            RenderedLine& line = start(indent, s.span, &s);
            keyword(line, "while");
            target(line, node.cond);
            colon(line);
            block(node.body, indent + 1);
          } else if constexpr (std::is_same_v<T, For>) {
            RenderedLine& line = start(indent, s.span, &s);
            keyword(line, "for");
            keyword(line, node.var);
            keyword(line, "in");
            keyword(line, "range");
            line.pieces.push_back(Piece{"(", false, 0, BreakKind::None, 0});
            for (std::size_t i = 0; i < node.range_args.size(); ++i) {
              if (i > 0) line.pieces.push_back(Piece{",", false, 1, BreakKind::AfterComma, 0});
              expr_at_depth(line, node.range_args[i], 1, i > 0);
            }
            line.pieces.push_back(Piece{")", false, 0, BreakKind::None, 0});
            colon(line);
            block(node.body, indent + 1);
          } else if constexpr (std::is_same_v<T, Return>) {
            RenderedLine& line = start(indent, s.span, &s);
            keyword(line, "return");
            if (node.value) target(line, *node.value);
          } else if constexpr (std::is_same_v<T, Break>) {
            keyword(start(indent, s.span, &s), "break");
          } else if constexpr (std::is_same_v<T, Continue>) {
            keyword(start(indent, s.span, &s), "continue");
          } else if constexpr (std::is_same_v<T, Pass>) {
            keyword(start(indent, s.span, &s), "pass");
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            RenderedLine& line = start(indent, s.span, &s);
            target(line, node.expr);
          } else if constexpr (std::is_same_v<T, FunctionDef>) {
            RenderedLine& line = start(indent, s.span, &s);
            keyword(line, "def");
            keyword(line, node.name);
            line.pieces.push_back(Piece{"(", false, 0, BreakKind::None, 0});
            for (std::size_t i = 0; i < node.params.size(); ++i) {
              if (i > 0) line.pieces.push_back(Piece{",", false, 1, BreakKind::AfterComma, 0});
              line.pieces.push_back(Piece{node.params[i], i > 0, 1, BreakKind::None, 0});
            }
            line.pieces.push_back(Piece{")", false, 0, BreakKind::None, 0});
            colon(line);
            block(node.body, indent + 1);
          }
        },
        s.node);
  }

  std::vector<RenderedLine>& lines_;
};

}  // namespace

std::string join_pieces(const std::vector<Piece>& pieces, std::size_t begin, std::size_t end) {
  end = std::min(end, pieces.size());
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin && pieces[i].space_before) out += ' ';
    out += pieces[i].text;
  }
  return out;
}

std::vector<Piece> render_expr(const Expr& expr) {
  std::vector<Piece> out;
  ExprRenderer(out, 0).emit(expr, Precedence::Or);
  return out;
}

std::string print_expr(const Expr& expr) { return join_pieces(render_expr(expr)); }

std::vector<RenderedLine> render_module(const ModuleAst& module) {
  std::vector<RenderedLine> lines;
  LineBuilder(lines).module(module.items);
  return lines;
}

std::string print_ast(const ModuleAst& module) {
  std::string out;
  for (const RenderedLine& line : render_module(module)) {
    if (!line.pieces.empty()) out.append(static_cast<std::size_t>(line.indent), ' ');
    out += join_pieces(line.pieces);
    out += '\n';
  }
  return out;
}

}  // namespace cogniview::syntax
