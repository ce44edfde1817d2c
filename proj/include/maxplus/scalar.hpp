#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "maxplus/rational.hpp"

namespace maxplus {

/// Element of the max-plus semiring: an exact rational or the bottom element ε.
///
/// operator+ is ⊕ (max) and operator* is ⊗ (plus). A default-constructed
/// Scalar is ε.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  Scalar(T value) : value_(Rational(value)) {}  // NOLINT(google-explicit-constructor)

  static Scalar epsilon() { return {}; }
  static Scalar unit() { return Scalar(Rational(0)); }

  [[nodiscard]] bool is_epsilon() const { return !value_.has_value(); }
  [[nodiscard]] bool is_finite() const { return value_.has_value(); }

  /// Throws std::logic_error on ε.
  [[nodiscard]] const Rational& value() const {
    if (!value_) throw std::logic_error("value() of epsilon");
    return *value_;
  }
  [[nodiscard]] const std::optional<Rational>& optional() const { return value_; }

  /// "." for ε, otherwise the canonical rational.
  [[nodiscard]] std::string to_string() const { return value_ ? value_->to_string() : std::string("."); }

  /// Accepts the rational grammar plus "." or "-inf" for ε.
  static Scalar parse(std::string_view text) {
    if (text == "." || text == "-inf" || text == "ε") return {};
    return Scalar(Rational::parse(text));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (!a.value_) return b;
    if (!b.value_) return a;
    return *a.value_ < *b.value_ ? b : a;
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (!a.value_ || !b.value_) return {};
    return Scalar(*a.value_ + *b.value_);
  }
  Scalar& operator+=(const Scalar& rhs) { return *this = *this + rhs; }
  Scalar& operator*=(const Scalar& rhs) { return *this = *this * rhs; }

  friend bool operator==(const Scalar& a, const Scalar& b) = default;
  /// ε is below every finite value.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (!a.value_ || !b.value_) return a.value_.has_value() <=> b.value_.has_value();
    return *a.value_ <=> *b.value_;
  }

 private:
  std::optional<Rational> value_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace maxplus
