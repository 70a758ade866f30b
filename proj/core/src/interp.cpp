#include "cogniview/interp.hpp"

#include <limits>
#include <set>
#include <unordered_map>

#include "cogniview/scope.hpp"
#include "cogniview/source.hpp"

namespace cogniview::interp {

using namespace cogniview::syntax;

// --- values -----------------------------------------------------------------

std::string_view Value::type_name() const {
  switch (data_.index()) {
    case 0: return "NoneType";
    case 1: return "bool";
    case 2: return "int";
    case 3: return "str";
    default: return "list";
  }
}

bool Value::truthy() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return false;
        else if constexpr (std::is_same_v<T, bool>) return v;
        else if constexpr (std::is_same_v<T, std::int64_t>) return v != 0;
        else if constexpr (std::is_same_v<T, std::string>) return !v.empty();
        else return !v->empty();
      },
      data_);
}

namespace {

std::string quote_repr(const std::string& s) {
  std::string out = "'";
  for (const char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '\'';
  return out;
}

void repr_into(const Value& v, std::string& out, std::set<const Value::List*>& active) {
  if (const auto* list = v.as_list()) {
    const Value::List* raw = list->get();
    if (active.count(raw) != 0) {
      out += "[...]";
      return;
    }
    active.insert(raw);
    out += '[';
    for (std::size_t i = 0; i < raw->size(); ++i) {
      if (i > 0) out += ", ";
      repr_into((*raw)[i], out, active);
    }
    out += ']';
    active.erase(raw);
    return;
  }
  if (v.is_none()) out += "None";
  else if (const auto* b = v.as_bool()) out += *b ? "True" : "False";
  else if (const auto* i = v.as_int()) out += std::to_string(*i);
  else if (const auto* s = v.as_string()) out += quote_repr(*s);
}

}  // namespace

std::string Value::repr() const {
  std::string out;
  std::set<const List*> active;
  repr_into(*this, out, active);
  return out;
}

std::string Value::str() const {
  if (const auto* s = as_string()) return *s;
  return repr();
}

Value Value::deep_copy() const {
  if (const auto* list = as_list()) {
    List items;
    items.reserve((*list)->size());
    for (const Value& v : **list) items.push_back(v.deep_copy());
    return Value::list(std::move(items));
  }
  return *this;
}

std::string_view to_string(RuntimeErrorKind kind) {
  switch (kind) {
    case RuntimeErrorKind::DivZero: return "DivZero";
    case RuntimeErrorKind::Overflow: return "Overflow";
    case RuntimeErrorKind::TypeError: return "TypeError";
    case RuntimeErrorKind::IndexError: return "IndexError";
    case RuntimeErrorKind::UnboundName: return "UnboundName";
    case RuntimeErrorKind::StepLimit: return "StepLimit";
  }
  return "?";
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Ok: return "Ok";
    case Status::RuntimeError: return "RuntimeError";
    case Status::Timeout: return "Timeout";
  }
  return "?";
}

nlohmann::ordered_json ExecOutcome::to_json() const {
  nlohmann::ordered_json j;
  j["status"] = to_string(status);
  j["error"] = error ? nlohmann::ordered_json(std::string(to_string(*error))) : nlohmann::ordered_json();
  j["output"] = output;
  j["result"] = result ? nlohmann::ordered_json(result->repr()) : nlohmann::ordered_json();
  return j;
}

bool same_outcome(const ExecOutcome& a, const ExecOutcome& b) {
  if (a.status != b.status || a.error != b.error) return false;
  const bool ra = a.result.has_value();
  const bool rb = b.result.has_value();
  if (ra != rb || (ra && a.result->repr() != b.result->repr())) return false;
  return a.output == b.output;
}

// --- interpreter ------------------------------------------------------------

namespace {

struct RuntimeFault {
  RuntimeErrorKind kind;
  std::string message;
};

struct DeadlineExceeded {};

enum class Signal { Normal, Break, Continue, Return };

struct Frame {
  const FunctionDef* fn = nullptr;
  std::unordered_map<std::string, Value> vars;
};

[[noreturn]] void fault(RuntimeErrorKind kind, std::string message) {
  throw RuntimeFault{kind, std::move(message)};
}

std::int64_t require_int(const Value& v, std::string_view what) {
  if (const auto* i = v.as_int()) return *i;
  fault(RuntimeErrorKind::TypeError,
        std::string(what) + " expects int, got " + std::string(v.type_name()));
}

void check_size(std::size_t n) {
  if (n > kMaxSequenceLength) fault(RuntimeErrorKind::Overflow, "sequence too long");
}

bool equal_values(const Value& a, const Value& b, int depth) {
  if (depth > 1000) fault(RuntimeErrorKind::StepLimit, "comparison recursion too deep");
  if (a.data().index() != b.data().index()) return false;
  if (const auto* la = a.as_list()) {
    const auto& lb = *b.as_list();
    if (la->get() == lb.get()) return true;
    if ((*la)->size() != lb->size()) return false;
    for (std::size_t i = 0; i < lb->size(); ++i) {
      if (!equal_values((**la)[i], (*lb)[i], depth + 1)) return false;
    }
    return true;
  }
  if (a.is_none()) return true;
  if (const auto* x = a.as_bool()) return *x == *b.as_bool();
  if (const auto* x = a.as_int()) return *x == *b.as_int();
  return *a.as_string() == *b.as_string();
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  if (b == 0) fault(RuntimeErrorKind::DivZero, "integer division by zero");
  if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
    fault(RuntimeErrorKind::Overflow, "integer overflow in //");
  }
  std::int64_t q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  if (b == 0) fault(RuntimeErrorKind::DivZero, "integer modulo by zero");
  if (b == -1) return 0;
  std::int64_t r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

std::size_t normalize_index(std::int64_t index, std::size_t size) {
  const auto n = static_cast<std::int64_t>(size);
  const std::int64_t i = index < 0 ? index + n : index;
  if (i < 0 || i >= n) fault(RuntimeErrorKind::IndexError, "index out of range");
  return static_cast<std::size_t>(i);
}

class Interpreter {
 public:
  Interpreter(const ModuleAst& module, const ExecLimits& limits)
      : module_(module), scopes_(module), limits_(limits) {
    if (limits_.deadline) started_ = std::chrono::steady_clock::now();
  }

  template <typename Body>
  ExecOutcome guarded(Body body) {
    ExecOutcome outcome;
    try {
      outcome.result = body();
      outcome.status = Status::Ok;
    } catch (const RuntimeFault& f) {
      outcome.status = Status::RuntimeError;
      outcome.error = f.kind;
      outcome.message = f.message;
    } catch (const DeadlineExceeded&) {
      outcome.status = Status::Timeout;
      outcome.message = "wall-clock deadline exceeded";
    }
    outcome.output = std::move(output_);
    return outcome;
  }

  std::optional<Value> run_module() {
    Frame frame;
    exec_block(module_.items, frame);
    const FunctionDef* main_fn = module_.find_function("main");
    if (main_fn != nullptr && main_fn->params.empty()) return call(*main_fn, {});
    return std::nullopt;
  }

  std::optional<Value> run_function(std::string_view name, const std::vector<Value>& args) {
    const FunctionDef* fn = module_.find_function(name);
    if (fn == nullptr) fault(RuntimeErrorKind::TypeError, "no function named " + std::string(name));
    return call(*fn, args);
  }

 private:
  void tick() {
    if (++steps_ > limits_.step_limit) fault(RuntimeErrorKind::StepLimit, "step limit reached");
    if (limits_.deadline && (steps_ & 1023) == 0 &&
        std::chrono::steady_clock::now() - started_ > *limits_.deadline) {
      throw DeadlineExceeded{};
    }
  }

  Value call(const FunctionDef& fn, const std::vector<Value>& args) {
    if (args.size() != fn.params.size()) {
      fault(RuntimeErrorKind::TypeError, fn.name + "() takes " + std::to_string(fn.params.size()) +
                                             " arguments but " + std::to_string(args.size()) +
                                             " were given");
    }
    if (depth_ >= limits_.call_depth_limit) fault(RuntimeErrorKind::StepLimit, "call depth limit reached");
    Frame frame;
    frame.fn = &fn;
    for (std::size_t i = 0; i < args.size(); ++i) frame.vars[fn.params[i]] = args[i];
    ++depth_;
    Value result;
    const Signal sig = exec_block(fn.body, frame);
    if (sig == Signal::Return) result = std::move(return_value_);
    --depth_;
    return result;
  }

  Signal exec_block(const Block& block, Frame& frame) {
    for (const Stmt& s : block) {
      const Signal sig = exec(s, frame);
      if (sig != Signal::Normal) return sig;
    }
    return Signal::Normal;
  }

  Signal exec(const Stmt& s, Frame& frame) {
    if (s.as<FunctionDef>() != nullptr) return Signal::Normal;  // definitions are static
    tick();
    if (const auto* a = s.as<Assign>()) {
      Value value = eval(a->value, frame);
      if (!a->index) {
        frame.vars[a->target] = std::move(value);
        return Signal::Normal;
      }
      const Value& base = lookup(a->target, frame);
      const Value index = eval(*a->index, frame);
      const auto* list = base.as_list();
      if (list == nullptr) {
        fault(RuntimeErrorKind::TypeError,
              std::string(base.type_name()) + " does not support item assignment");
      }
      const std::int64_t i = require_int(index, "list index");
      (**list)[normalize_index(i, (*list)->size())] = std::move(value);
      return Signal::Normal;
    }
    if (const auto* e = s.as<ExprStmt>()) {
      eval(e->expr, frame);
      return Signal::Normal;
    }
    if (const auto* branch = s.as<If>()) {
      for (const IfArm& arm : branch->arms) {
        if (eval(arm.cond, frame).truthy()) return exec_block(arm.body, frame);
      }
      return exec_block(branch->orelse, frame);
    }
    if (const auto* loop = s.as<While>()) {
      bool first = true;
      while (true) {
        if (!first) tick();
        first = false;
        if (!eval(loop->cond, frame).truthy()) return Signal::Normal;
        const Signal sig = exec_block(loop->body, frame);
        if (sig == Signal::Break) return Signal::Normal;
        if (sig == Signal::Return) return sig;
      }
    }
    if (const auto* loop = s.as<For>()) return exec_for(*loop, frame);
    if (const auto* r = s.as<Return>()) {
      return_value_ = r->value ? eval(*r->value, frame) : Value::none();
      return Signal::Return;
    }
    if (s.as<Break>() != nullptr) return Signal::Break;
    if (s.as<Continue>() != nullptr) return Signal::Continue;
    return Signal::Normal;  // pass
  }

  Signal exec_for(const For& loop, Frame& frame) {
    std::vector<std::int64_t> args;
    for (const Expr& e : loop.range_args) args.push_back(require_int(eval(e, frame), "range()"));
    std::int64_t start = 0;
    std::int64_t stop = 0;
    std::int64_t step = 1;
    if (args.size() == 1) {
      stop = args[0];
    } else {
      start = args[0];
      stop = args[1];
      if (args.size() == 3) step = args[2];
    }
    if (step == 0) fault(RuntimeErrorKind::TypeError, "range() step must not be zero");
    bool first = true;
    for (std::int64_t i = start; step > 0 ? i < stop : i > stop;) {
      if (!first) tick();
      first = false;
      frame.vars[loop.var] = Value::integer(i);
      const Signal sig = exec_block(loop.body, frame);
      if (sig == Signal::Break) break;
      if (sig == Signal::Return) return sig;
      if (__builtin_add_overflow(i, step, &i)) break;
    }
    return Signal::Normal;
  }

  const Value& lookup(const std::string& name, const Frame& frame) {
    const auto it = frame.vars.find(name);
    if (it == frame.vars.end()) fault(RuntimeErrorKind::UnboundName, "name '" + name + "' is not bound");
    return it->second;
  }

  Value eval(const Expr& e, Frame& frame) {
    return std::visit(
        [&](const auto& node) -> Value {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return Value::integer(node.value);
          } else if constexpr (std::is_same_v<T, StrLit>) {
            return Value::string(node.value);
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return Value::boolean(node.value);
          } else if constexpr (std::is_same_v<T, NoneLit>) {
            return Value::none();
          } else if constexpr (std::is_same_v<T, Name>) {
            return lookup(node.id, frame);
          } else if constexpr (std::is_same_v<T, ListLit>) {
            Value::List items;
            for (const Expr& el : node.elements) items.push_back(eval(el, frame));
            return Value::list(std::move(items));
          } else if constexpr (std::is_same_v<T, Index>) {
            const Value base = eval(*node.base, frame);
            const Value index = eval(*node.index, frame);
            return subscript(base, index);
          } else if constexpr (std::is_same_v<T, Unary>) {
            const Value v = eval(*node.operand, frame);
            if (node.op == UnaryOp::Not) return Value::boolean(!v.truthy());
            const std::int64_t i = require_int(v, "unary -");
            if (i == std::numeric_limits<std::int64_t>::min()) fault(RuntimeErrorKind::Overflow, "integer overflow in -");
            return Value::integer(-i);
          } else if constexpr (std::is_same_v<T, Binary>) {
            return binary(node, frame);
          } else {
            return call_expr(node, frame);
          }
        },
        e.node);
  }

  static Value subscript(const Value& base, const Value& index) {
    if (const auto* list = base.as_list()) {
      const std::int64_t i = require_int(index, "list index");
      return (**list)[normalize_index(i, (*list)->size())];
    }
    if (const auto* s = base.as_string()) {
      const std::int64_t i = require_int(index, "string index");
      const std::vector<std::string> chars = split_code_points(*s);
      return Value::string(chars[normalize_index(i, chars.size())]);
    }
    fault(RuntimeErrorKind::TypeError, std::string(base.type_name()) + " is not subscriptable");
  }

  Value binary(const Binary& node, Frame& frame) {
    if (node.op == BinaryOp::And || node.op == BinaryOp::Or) {
      Value lhs = eval(*node.lhs, frame);
      const bool decided = node.op == BinaryOp::And ? !lhs.truthy() : lhs.truthy();
      return decided ? lhs : eval(*node.rhs, frame);
    }
    const Value lhs = eval(*node.lhs, frame);
    const Value rhs = eval(*node.rhs, frame);
    switch (node.op) {
      case BinaryOp::Eq: return Value::boolean(equal_values(lhs, rhs, 0));
      case BinaryOp::Ne: return Value::boolean(!equal_values(lhs, rhs, 0));
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge: return compare(node.op, lhs, rhs);
      case BinaryOp::Add: return add(lhs, rhs);
      default: break;
    }
    const std::int64_t a = require_int(lhs, to_string(node.op));
    const std::int64_t b = require_int(rhs, to_string(node.op));
    std::int64_t r = 0;
    switch (node.op) {
      case BinaryOp::Sub:
        if (__builtin_sub_overflow(a, b, &r)) fault(RuntimeErrorKind::Overflow, "integer overflow in -");
        return Value::integer(r);
      case BinaryOp::Mul:
        if (__builtin_mul_overflow(a, b, &r)) fault(RuntimeErrorKind::Overflow, "integer overflow in *");
        return Value::integer(r);
      case BinaryOp::FloorDiv: return Value::integer(floor_div(a, b));
      case BinaryOp::Mod: return Value::integer(floor_mod(a, b));
      default: break;
    }
    fault(RuntimeErrorKind::TypeError, "unsupported operator");
  }

  static Value add(const Value& lhs, const Value& rhs) {
    if (const auto* a = lhs.as_int()) {
      if (const auto* b = rhs.as_int()) {
        std::int64_t r = 0;
        if (__builtin_add_overflow(*a, *b, &r)) fault(RuntimeErrorKind::Overflow, "integer overflow in +");
        return Value::integer(r);
      }
    }
    if (const auto* a = lhs.as_string()) {
      if (const auto* b = rhs.as_string()) {
        check_size(a->size() + b->size());
        return Value::string(*a + *b);
      }
    }
    if (const auto* a = lhs.as_list()) {
      if (const auto* b = rhs.as_list()) {
        check_size((*a)->size() + (*b)->size());
        Value::List items = **a;
        items.insert(items.end(), (*b)->begin(), (*b)->end());
        return Value::list(std::move(items));
      }
    }
    fault(RuntimeErrorKind::TypeError, "unsupported operand types for +: " +
                                           std::string(lhs.type_name()) + " and " +
                                           std::string(rhs.type_name()));
  }

  static Value compare(BinaryOp op, const Value& lhs, const Value& rhs) {
    int order = 0;
    if (lhs.as_int() != nullptr && rhs.as_int() != nullptr) {
      const auto a = *lhs.as_int();
      const auto b = *rhs.as_int();
      order = a < b ? -1 : (a > b ? 1 : 0);
    } else if (lhs.as_string() != nullptr && rhs.as_string() != nullptr) {
      const int c = lhs.as_string()->compare(*rhs.as_string());
      order = c < 0 ? -1 : (c > 0 ? 1 : 0);
    } else {
      fault(RuntimeErrorKind::TypeError, "cannot order " + std::string(lhs.type_name()) + " and " +
                                             std::string(rhs.type_name()));
    }
    switch (op) {
      case BinaryOp::Lt: return Value::boolean(order < 0);
      case BinaryOp::Le: return Value::boolean(order <= 0);
      case BinaryOp::Gt: return Value::boolean(order > 0);
      default: return Value::boolean(order >= 0);
    }
  }

  Value call_expr(const Call& node, Frame& frame) {
    std::vector<Value> args;
    args.reserve(node.args.size());
    for (const Expr& a : node.args) args.push_back(eval(a, frame));
    if (node.callee == "print" || node.callee == "len") {
      if (args.size() != 1) fault(RuntimeErrorKind::TypeError, node.callee + "() takes exactly one argument");
      if (node.callee == "print") {
        output_.push_back(args[0].str());
        return Value::none();
      }
      if (const auto* s = args[0].as_string()) {
        return Value::integer(static_cast<std::int64_t>(code_point_count(*s)));
      }
      if (const auto* l = args[0].as_list()) return Value::integer(static_cast<std::int64_t>((*l)->size()));
      fault(RuntimeErrorKind::TypeError, std::string(args[0].type_name()) + " has no len()");
    }
    const FunctionDef* target = scopes_.resolve(frame.fn, node.callee);
    if (target == nullptr) fault(RuntimeErrorKind::UnboundName, "function '" + node.callee + "' is not defined");
    return call(*target, args);
  }

  const ModuleAst& module_;
  ScopeTable scopes_;
  ExecLimits limits_;
  std::int64_t steps_ = 0;
  int depth_ = 0;
  Value return_value_;
  std::vector<std::string> output_;
  std::chrono::steady_clock::time_point started_{};
};

}  // namespace

ExecOutcome run_module(const ModuleAst& module, std::int64_t step_limit) {
  ExecLimits limits;
  limits.step_limit = step_limit;
  return run_module(module, limits);
}

ExecOutcome run_module(const ModuleAst& module, const ExecLimits& limits) {
  Interpreter interp(module, limits);
  return interp.guarded([&] { return interp.run_module(); });
}

ExecOutcome run_function(const ModuleAst& module, std::string_view name,
                         const std::vector<Value>& args, const ExecLimits& limits) {
  Interpreter interp(module, limits);
  return interp.guarded([&]() -> std::optional<Value> { return interp.run_function(name, args); });
}

}  // namespace cogniview::interp
