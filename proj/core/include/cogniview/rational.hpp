#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cogniview {

/// Exact non-overflowing (checked) rational used for weights and scores.
/// Always normalized: gcd(num, den) == 1 and den > 0.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT(google-explicit-constructor)

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] double to_double() const;

  /// "3", "-2", "1/4" or a finite decimal such as "0.25".
  static Rational parse(std::string_view text);
  /// Closest short decimal representation of a double (up to 15 significant
  /// digits), as produced by JSON configuration files.
  static Rational from_double(double value);

  /// "3" or "1/4".
  [[nodiscard]] std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& other) { return *this = *this + other; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace cogniview
