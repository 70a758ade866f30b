#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogniview/ast.hpp"

namespace cogniview::interp {

/// MiniPy runtime value. Lists are shared and mutable, as in Python.
class Value {
 public:
  using List = std::vector<Value>;
  using ListRef = std::shared_ptr<List>;
  using Data = std::variant<std::monostate, bool, std::int64_t, std::string, ListRef>;

  Value() = default;
  static Value none() { return Value(); }
  static Value boolean(bool b) { return Value(Data(b)); }
  static Value integer(std::int64_t i) { return Value(Data(i)); }
  static Value string(std::string s) { return Value(Data(std::move(s))); }
  static Value list(List items) { return Value(Data(std::make_shared<List>(std::move(items)))); }

  [[nodiscard]] const Data& data() const { return data_; }
  [[nodiscard]] bool is_none() const { return std::holds_alternative<std::monostate>(data_); }
  [[nodiscard]] const bool* as_bool() const { return std::get_if<bool>(&data_); }
  [[nodiscard]] const std::int64_t* as_int() const { return std::get_if<std::int64_t>(&data_); }
  [[nodiscard]] const std::string* as_string() const { return std::get_if<std::string>(&data_); }
  [[nodiscard]] const ListRef* as_list() const { return std::get_if<ListRef>(&data_); }

  [[nodiscard]] std::string_view type_name() const;
  [[nodiscard]] bool truthy() const;
  /// Python-style repr: strings quoted, self-containing lists shown as [...].
  [[nodiscard]] std::string repr() const;
  /// What `print` writes: strings bare, everything else as repr.
  [[nodiscard]] std::string str() const;
  /// Independent copy (lists are copied element-wise).
  [[nodiscard]] Value deep_copy() const;

 private:
  explicit Value(Data data) : data_(std::move(data)) {}
  Data data_;
};

enum class RuntimeErrorKind { DivZero, Overflow, TypeError, IndexError, UnboundName, StepLimit };
enum class Status { Ok, RuntimeError, Timeout };

std::string_view to_string(RuntimeErrorKind kind);
std::string_view to_string(Status status);

/// What a run produced. `message` is diagnostic only and not part of
/// outcome comparison (it can mention renamed variables).
struct ExecOutcome {
  Status status = Status::Ok;
  std::optional<RuntimeErrorKind> error;
  std::string message;
  std::vector<std::string> output;
  std::optional<Value> result;

  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Outcomes compare on status, error kind, printed lines and result repr.
bool same_outcome(const ExecOutcome& a, const ExecOutcome& b);

inline constexpr std::int64_t kDefaultStepLimit = 1'000'000;
inline constexpr int kDefaultCallDepthLimit = 200;
/// Longest string (bytes) or list a program may build.
inline constexpr std::size_t kMaxSequenceLength = 1'000'000;

struct ExecLimits {
  std::int64_t step_limit = kDefaultStepLimit;
  /// Deeper recursion ends the run with StepLimit.
  int call_depth_limit = kDefaultCallDepthLimit;
  /// Optional wall-clock budget; exceeding it yields Status::Timeout. Off by
  /// default because it makes outcomes timing dependent.
  std::optional<std::chrono::milliseconds> deadline;
};

/// Runs the top-level statements in order, then `main()` when a
/// zero-parameter `main` exists; `result` is main's return value.
ExecOutcome run_module(const syntax::ModuleAst& module, std::int64_t step_limit = kDefaultStepLimit);
ExecOutcome run_module(const syntax::ModuleAst& module, const ExecLimits& limits);

/// Calls the top-level function `name` with `args` without running top-level
/// code. An unknown name or wrong arity produces a TypeError outcome.
ExecOutcome run_function(const syntax::ModuleAst& module, std::string_view name,
                         const std::vector<Value>& args, const ExecLimits& limits = {});

}  // namespace cogniview::interp
