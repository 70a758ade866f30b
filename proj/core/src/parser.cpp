#include "cogniview/parser.hpp"

#include <charconv>
#include <set>
#include <string>

namespace cogniview::syntax {
namespace {

std::string describe(const Token& tok) {
  switch (tok.kind) {
    case TokenKind::Newline: return "end of line";
    case TokenKind::Indent: return "indent";
    case TokenKind::Dedent: return "dedent";
    case TokenKind::Eof: return "end of file";
    default: return "'" + tok.lexeme + "'";
  }
}

struct Context {
  bool in_function = false;
  bool function_body = false;  // current block may contain `def`
  int loops = 0;
};

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::Eof) {
      throw Error(ErrorKind::UnexpectedToken, "token stream does not end with EOF");
    }
  }

  ModuleAst module() {
    ModuleAst out;
    Context ctx;
    ctx.function_body = true;
    while (!at(TokenKind::Eof)) out.items.push_back(item(ctx));
    return out;
  }

 private:
  // --- token helpers -------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool at(TokenKind kind, std::string_view text) const { return peek().is(kind, text); }
  bool at_op(std::string_view text) const { return at(TokenKind::Op, text); }
  bool at_kw(std::string_view text) const { return at(TokenKind::Keyword, text); }

  const Token& advance() {
    const Token& tok = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    last_ = &tok;
    return tok;
  }

  [[noreturn]] void unexpected(std::string_view expected) const {
    throw Error(ErrorKind::UnexpectedToken,
                "expected " + std::string(expected) + " but found " + describe(peek()),
                peek().span);
  }

  const Token& expect(TokenKind kind, std::string_view text, std::string_view what) {
    if (!at(kind, text)) unexpected(what);
    return advance();
  }
  const Token& expect_kind(TokenKind kind, std::string_view what) {
    if (!at(kind)) unexpected(what);
    return advance();
  }

  Span from(const Span& start) const { return Span::cover(start, last_->span); }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxSyntaxDepth) {
        throw Error(ErrorKind::NestingTooDeep, "nesting exceeds the supported depth",
                    parser.peek().span);
      }
    }
    ~DepthGuard() { --parser.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
    Parser& parser;
  };

  // --- statements ----------------------------------------------------------
  Stmt item(const Context& ctx) {
    if (at_kw("def")) {
      if (!ctx.function_body) unexpected("a statement (def is only allowed at module or function level)");
      return function();
    }
    return statement(ctx);
  }

  Stmt function() {
    DepthGuard guard(*this);
    const Span start = advance().span;
    const Token& name = expect_kind(TokenKind::Ident, "function name");
    if (is_reserved_function_name(name.lexeme)) {
      throw Error(ErrorKind::ReservedName, "'" + name.lexeme + "' is a reserved function name",
                  name.span);
    }
    FunctionDef def;
    def.name = name.lexeme;
    expect(TokenKind::Op, "(", "'('");
    if (!at_op(")")) {
      for (;;) {
        const Token& param = expect_kind(TokenKind::Ident, "parameter name");
        for (const auto& existing : def.params) {
          if (existing == param.lexeme) {
            throw Error(ErrorKind::DuplicateParam, "duplicate parameter '" + param.lexeme + "'",
                        param.span);
          }
        }
        def.params.push_back(param.lexeme);
        if (!at_op(",")) break;
        advance();
      }
    }
    expect(TokenKind::Op, ")", "')'");
    const Span header = from(start);
    Context inner;
    inner.in_function = true;
    inner.function_body = true;
    def.body = block(inner);
    return make_stmt(std::move(def), header);
  }

  Block block(const Context& ctx) {
    expect(TokenKind::Op, ":", "':'");
    expect_kind(TokenKind::Newline, "end of line after ':'");
    expect_kind(TokenKind::Indent, "an indented block");
    Block out;
    while (!at(TokenKind::Dedent)) {
      if (at(TokenKind::Eof)) unexpected("dedent");
      out.push_back(item(ctx));
    }
    advance();
    return out;
  }

  Context nested_block(const Context& ctx, bool loop) const {
    Context inner = ctx;
    inner.function_body = false;
    if (loop) ++inner.loops;
    return inner;
  }

  Stmt statement(const Context& ctx) {
    DepthGuard guard(*this);
    const Token& tok = peek();
    const Span start = tok.span;
    if (tok.kind == TokenKind::Keyword) {
      if (tok.lexeme == "if") return if_stmt(ctx);
      if (tok.lexeme == "while") {
        advance();
        While loop{expression(), {}};
        const Span header = from(start);
        loop.body = block(nested_block(ctx, true));
        return make_stmt(std::move(loop), header);
      }
      if (tok.lexeme == "for") return for_stmt(ctx);
      if (tok.lexeme == "return") {
        if (!ctx.in_function) {
          throw Error(ErrorKind::ReturnOutsideFunction, "'return' outside of a function", tok.span);
        }
        advance();
        Return ret;
        if (!at(TokenKind::Newline)) ret.value = expression();
        const Span span = from(start);
        end_of_statement();
        return make_stmt(std::move(ret), span);
      }
      if (tok.lexeme == "break" || tok.lexeme == "continue") {
        if (ctx.loops == 0) {
          throw Error(ErrorKind::BreakOutsideLoop, "'" + tok.lexeme + "' outside of a loop", tok.span);
        }
        const bool is_break = tok.lexeme == "break";
        advance();
        const Span span = from(start);
        end_of_statement();
        return is_break ? make_stmt(Break{}, span) : make_stmt(Continue{}, span);
      }
      if (tok.lexeme == "pass") {
        advance();
        const Span span = from(start);
        end_of_statement();
        return make_stmt(Pass{}, span);
      }
    }
    Expr target = expression();
    if (at_op("=")) {
      Assign assign{"", std::nullopt, Expr{}};
      if (const auto* name = target.as<Name>()) {
        assign.target = name->id;
      } else if (auto* idx = target.as<Index>(); idx != nullptr && idx->base->as<Name>() != nullptr) {
        assign.target = idx->base->as<Name>()->id;
        assign.index = std::move(*idx->index);
      } else {
        throw Error(ErrorKind::UnexpectedToken,
                    "assignment target must be a name or name[index]", peek().span);
      }
      advance();
      assign.value = expression();
      const Span span = from(start);
      end_of_statement();
      return make_stmt(std::move(assign), span);
    }
    const Span span = from(start);
    end_of_statement();
    return make_stmt(ExprStmt{std::move(target)}, span);
  }

  void end_of_statement() { expect_kind(TokenKind::Newline, "end of line"); }

  Stmt if_stmt(const Context& ctx) {
    const Span start = peek().span;
    If branch;
    const Context inner = nested_block(ctx, false);
    do {
      const Span arm_start = advance().span;  // if / elif
      Expr cond = expression();
      const Span arm_span = from(arm_start);
      Block body = block(inner);
      branch.arms.push_back(IfArm{std::move(cond), std::move(body), arm_span});
    } while (at_kw("elif"));
    if (at_kw("else")) {
      const Token& kw = advance();
      branch.else_span = kw.span;
      branch.orelse = block(inner);
    }
    (void)start;
    const Span header = branch.arms.front().span;
    return make_stmt(std::move(branch), header);
  }

  Stmt for_stmt(const Context& ctx) {
    const Span start = advance().span;
    For loop;
    loop.var = expect_kind(TokenKind::Ident, "loop variable").lexeme;
    expect(TokenKind::Keyword, "in", "'in'");
    expect(TokenKind::Ident, "range", "'range'");
    expect(TokenKind::Op, "(", "'('");
    loop.range_args.push_back(expression());
    while (at_op(",") && loop.range_args.size() < 3) {
      advance();
      loop.range_args.push_back(expression());
    }
    expect(TokenKind::Op, ")", "')'");
    const Span header = from(start);
    loop.body = block(nested_block(ctx, true));
    return make_stmt(std::move(loop), header);
  }

  // --- expressions ---------------------------------------------------------
  Expr expression() {
    DepthGuard guard(*this);
    return or_expr();
  }

  Expr binary_chain(Expr (Parser::*next)(), std::initializer_list<std::pair<const char*, BinaryOp>> ops,
                    TokenKind kind = TokenKind::Op) {
    Expr lhs = (this->*next)();
    for (;;) {
      const auto* match = static_cast<const std::pair<const char*, BinaryOp>*>(nullptr);
      for (const auto& op : ops) {
        if (at(kind, op.first)) match = &op;
      }
      if (match == nullptr) return lhs;
      advance();
      Expr rhs = (this->*next)();
      const Span span = Span::cover(lhs.span, rhs.span);
      lhs = make_expr(Binary{match->second, std::move(lhs), std::move(rhs)}, span);
    }
  }

  Expr or_expr() { return binary_chain(&Parser::and_expr, {{"or", BinaryOp::Or}}, TokenKind::Keyword); }
  Expr and_expr() { return binary_chain(&Parser::not_expr, {{"and", BinaryOp::And}}, TokenKind::Keyword); }

  Expr not_expr() {
    if (at_kw("not")) {
      DepthGuard guard(*this);
      const Span start = advance().span;
      Expr operand = not_expr();
      const Span span = Span::cover(start, operand.span);
      return make_expr(Unary{UnaryOp::Not, std::move(operand)}, span);
    }
    return comparison();
  }

  std::optional<BinaryOp> comparison_op() const {
    static const std::pair<const char*, BinaryOp> kOps[] = {
        {"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne}, {"<", BinaryOp::Lt},
        {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge},
    };
    for (const auto& [text, op] : kOps) {
      if (at_op(text)) return op;
    }
    return std::nullopt;
  }

  Expr comparison() {
    Expr lhs = additive();
    const auto op = comparison_op();
    if (!op) return lhs;
    advance();
    Expr rhs = additive();
    if (comparison_op()) {
      throw Error(ErrorKind::UnexpectedToken, "comparison operators cannot be chained", peek().span);
    }
    const Span span = Span::cover(lhs.span, rhs.span);
    return make_expr(Binary{*op, std::move(lhs), std::move(rhs)}, span);
  }

  Expr additive() {
    return binary_chain(&Parser::multiplicative, {{"+", BinaryOp::Add}, {"-", BinaryOp::Sub}});
  }
  Expr multiplicative() {
    return binary_chain(&Parser::unary,
                        {{"*", BinaryOp::Mul}, {"//", BinaryOp::FloorDiv}, {"%", BinaryOp::Mod}});
  }

  Expr unary() {
    if (at_op("-")) {
      DepthGuard guard(*this);
      const Span start = advance().span;
      Expr operand = unary();
      const Span span = Span::cover(start, operand.span);
      return make_expr(Unary{UnaryOp::Neg, std::move(operand)}, span);
    }
    return postfix();
  }

  Expr postfix() {
    Expr base = atom();
    while (at_op("[")) {
      DepthGuard guard(*this);
      advance();
      Expr index = expression();
      expect(TokenKind::Op, "]", "']'");
      const Span span = from(base.span);
      base = make_expr(Index{std::move(base), std::move(index)}, span);
    }
    return base;
  }

  std::vector<Expr> expr_list(std::string_view close) {
    std::vector<Expr> out;
    if (at_op(close)) {
      advance();
      return out;
    }
    for (;;) {
      out.push_back(expression());
      if (at_op(",")) {
        advance();
        continue;
      }
      expect(TokenKind::Op, close, "',' or '" + std::string(close) + "'");
      return out;
    }
  }

  Expr atom() {
    const Token& tok = peek();
    const Span start = tok.span;
    switch (tok.kind) {
      case TokenKind::Int: {
        advance();
        std::int64_t value = 0;
        std::from_chars(tok.lexeme.data(), tok.lexeme.data() + tok.lexeme.size(), value);
        return make_expr(IntLit{value}, start);
      }
      case TokenKind::String:
        advance();
        return make_expr(StrLit{decode_string_literal(tok.lexeme)}, start);
      case TokenKind::Keyword:
        if (tok.lexeme == "True" || tok.lexeme == "False") {
          advance();
          return make_expr(BoolLit{tok.lexeme == "True"}, start);
        }
        if (tok.lexeme == "None") {
          advance();
          return make_expr(NoneLit{}, start);
        }
        break;
      case TokenKind::Ident: {
        advance();
        if (at_op("(")) {
          DepthGuard guard(*this);
          advance();
          Call call{tok.lexeme, expr_list(")")};
          return make_expr(std::move(call), from(start));
        }
        return make_expr(Name{tok.lexeme}, start);
      }
      case TokenKind::Op:
        if (tok.lexeme == "(") {
          DepthGuard guard(*this);
          advance();
          Expr inner = expression();
          expect(TokenKind::Op, ")", "')'");
          inner.span = from(start);
          return inner;
        }
        if (tok.lexeme == "[") {
          DepthGuard guard(*this);
          advance();
          ListLit list{expr_list("]")};
          return make_expr(std::move(list), from(start));
        }
        break;
      default:
        break;
    }
    unexpected("an expression");
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  const Token* last_ = nullptr;
  int depth_ = 0;
};

// --- static checks ----------------------------------------------------------

/// Names bound in a function's own scope: parameters, assignment targets and
/// loop variables, not descending into nested definitions.
std::set<std::string> own_locals(const FunctionDef& def) {
  std::set<std::string> out(def.params.begin(), def.params.end());
  std::function<void(const Block&)> scan = [&](const Block& block) {
    for (const Stmt& s : block) {
      if (s.as<FunctionDef>() != nullptr) continue;
      if (const auto* a = s.as<Assign>(); a != nullptr && !a->index) out.insert(a->target);
      if (const auto* f = s.as<For>()) out.insert(f->var);
      for (int b = 0; b < child_block_count(s); ++b) scan(*child_block(s, b));
    }
  };
  scan(def.body);
  return out;
}

void check_capture(const FunctionDef& def, const std::vector<std::set<std::string>>& enclosing) {
  const std::set<std::string> locals = own_locals(def);
  auto check_name = [&](const std::string& id, const Span& span) {
    if (locals.count(id) != 0) return;
    for (const auto& scope : enclosing) {
      if (scope.count(id) != 0) {
        throw Error(ErrorKind::NestedCaptureViolation,
                    "nested function '" + def.name + "' refers to enclosing local '" + id + "'",
                    span);
      }
    }
  };
  std::function<void(const Block&)> scan = [&](const Block& block) {
    for (const Stmt& s : block) {
      if (s.as<FunctionDef>() != nullptr) continue;
      if (const auto* a = s.as<Assign>(); a != nullptr && a->index) check_name(a->target, s.span);
      for_each_own_expr(s, [&](const Expr& e) {
        walk_expr(e, [&](const Expr& sub) {
          if (const auto* n = sub.as<Name>()) check_name(n->id, sub.span);
        });
      });
      for (int b = 0; b < child_block_count(s); ++b) scan(*child_block(s, b));
    }
  };
  if (!enclosing.empty()) scan(def.body);
  auto inner = enclosing;
  inner.push_back(locals);
  for (const FunctionDef* child : def.nested()) check_capture(*child, inner);
}

void check_duplicates(const Block& block) {
  std::set<std::string> seen;
  for (const Stmt& s : block) {
    if (const auto* def = s.as<FunctionDef>()) {
      if (!seen.insert(def->name).second) {
        throw Error(ErrorKind::DuplicateFunction, "function '" + def->name + "' is defined twice",
                    s.span);
      }
      check_duplicates(def->body);
    }
  }
}

}  // namespace

std::string decode_string_literal(std::string_view lexeme) {
  std::string out;
  if (lexeme.size() < 2) return out;
  const std::string_view body = lexeme.substr(1, lexeme.size() - 2);
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '\\' && i + 1 < body.size()) {
      const char e = body[++i];
      out += e == 'n' ? '\n' : e;
    } else {
      out += body[i];
    }
  }
  return out;
}

void check_static(const ModuleAst& module) {
  check_duplicates(module.items);
  for (const FunctionDef* def : module.functions()) check_capture(*def, {});
}

ModuleAst parse(const std::vector<Token>& tokens) {
  ModuleAst module = Parser(tokens).module();
  check_static(module);
  return module;
}

ParsedSource parse_source(const SourceUnit& source) {
  LexResult lexed = tokenize(source);
  return ParsedSource{parse(lexed.tokens), std::move(lexed.comments)};
}

ModuleAst parse_text(std::string_view text) {
  return parse_source(SourceUnit("<text>", std::string(text))).module;
}

}  // namespace cogniview::syntax
