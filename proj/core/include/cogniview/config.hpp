#pragma once

#include <cstdint>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cogniview/rational.hpp"

namespace cogniview::analysis {

/// Knobs shared by the metrics, the optimizer and the equivalence oracle.
struct CLConfig {
  int capacity = 5;      // live variables a reader can hold at once
  int line_limit = 40;   // code points per line, indentation included
  int depth_budget = 3;  // call-stack frames before the score charges
  Rational w_nest{1};
  Rational w_wm{1};
  Rational w_call{1};
  Rational w_line{1};
  int max_iters = 100;
  int fuzz_trials = 200;
  std::uint64_t seed = 0;

  /// Throws Error(ConfigError) when a field is out of range.
  void validate() const;

  /// Overlays the fields present in `json` onto this config. Weights may be
  /// JSON numbers or strings such as "1/2". Unknown keys are rejected.
  void merge_json(const nlohmann::json& json);

  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

}  // namespace cogniview::analysis
