#include "cogniview/config.hpp"

#include <string>

#include "cogniview/error.hpp"

namespace cogniview::analysis {
namespace {

int positive_int(const nlohmann::json& value, std::string_view key) {
  if (!value.is_number_integer() || value.get<std::int64_t>() <= 0 ||
      value.get<std::int64_t>() > 1'000'000'000) {
    throw Error(ErrorKind::ConfigError, std::string(key) + " must be a positive integer");
  }
  return value.get<int>();
}

Rational weight(const nlohmann::json& value, std::string_view key) {
  try {
    Rational r;
    if (value.is_number_integer()) {
      r = Rational(value.get<std::int64_t>());
    } else if (value.is_number()) {
      r = Rational::from_double(value.get<double>());
    } else if (value.is_string()) {
      r = Rational::parse(value.get<std::string>());
    } else {
      throw std::invalid_argument("wrong type");
    }
    if (r < Rational(0)) throw std::invalid_argument("negative");
    return r;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigError, std::string(key) + " must be a non-negative rational");
  }
}

}  // namespace

void CLConfig::validate() const {
  if (capacity <= 0) throw Error(ErrorKind::ConfigError, "capacity must be positive");
  if (line_limit <= 0) throw Error(ErrorKind::ConfigError, "line_limit must be positive");
  if (depth_budget <= 0) throw Error(ErrorKind::ConfigError, "depth_budget must be positive");
  if (max_iters <= 0) throw Error(ErrorKind::ConfigError, "max_iters must be positive");
  if (fuzz_trials <= 0) throw Error(ErrorKind::ConfigError, "fuzz_trials must be positive");
  const Rational zero(0);
  if (w_nest < zero || w_wm < zero || w_call < zero || w_line < zero) {
    throw Error(ErrorKind::ConfigError, "weights must be non-negative");
  }
  if (w_nest == zero && w_wm == zero && w_call == zero && w_line == zero) {
    throw Error(ErrorKind::ConfigError, "weights must not all be zero");
  }
}

void CLConfig::merge_json(const nlohmann::json& json) {
  if (!json.is_object()) throw Error(ErrorKind::ConfigError, "configuration must be a JSON object");
  for (const auto& [key, value] : json.items()) {
    if (key == "capacity") {
      capacity = positive_int(value, key);
    } else if (key == "line_limit") {
      line_limit = positive_int(value, key);
    } else if (key == "depth_budget") {
      depth_budget = positive_int(value, key);
    } else if (key == "max_iters") {
      max_iters = positive_int(value, key);
    } else if (key == "fuzz_trials") {
      fuzz_trials = positive_int(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        throw Error(ErrorKind::ConfigError, "seed must be a non-negative integer");
      }
      seed = value.get<std::uint64_t>();
    } else if (key == "w_nest") {
      w_nest = weight(value, key);
    } else if (key == "w_wm") {
      w_wm = weight(value, key);
    } else if (key == "w_call") {
      w_call = weight(value, key);
    } else if (key == "w_line") {
      w_line = weight(value, key);
    } else {
      throw Error(ErrorKind::ConfigError, "unknown configuration key '" + key + "'");
    }
  }
  validate();
}

nlohmann::ordered_json CLConfig::to_json() const {
  return nlohmann::ordered_json{
      {"capacity", capacity},       {"line_limit", line_limit},
      {"depth_budget", depth_budget}, {"w_nest", w_nest.to_string()},
      {"w_wm", w_wm.to_string()},   {"w_call", w_call.to_string()},
      {"w_line", w_line.to_string()}, {"max_iters", max_iters},
      {"fuzz_trials", fuzz_trials}, {"seed", seed},
  };
}

}  // namespace cogniview::analysis
