#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace maxplus {

using BigInt = mpz_class;

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in a signed 64-bit word
/// are stored inline; anything larger is promoted to a GMP rational and
/// demoted again as soon as a result fits. The representation is canonical,
/// so equality never needs to normalise.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      if (static_cast<std::int64_t>(value) != kMinInt64) {
        num_ = static_cast<std::int64_t>(value);
        return;
      }
    } else {
      if (static_cast<std::uint64_t>(value) <= static_cast<std::uint64_t>(kMaxInt64)) {
        num_ = static_cast<std::int64_t>(value);
        return;
      }
    }
    assign(mpq_class(mpz_class(std::to_string(value))));
  }

  /// Throws std::domain_error when den == 0.
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpz_class& value);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational& operator=(const Rational& other);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  /// Accepts "p", "-p", "+p" and "p/q" with q != 0. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  /// "p" for integers, "p/q" otherwise, always in lowest terms.
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] bool is_small() const { return !big_; }
  [[nodiscard]] int sign() const;

  /// Inline numerator/denominator; only valid when is_small().
  [[nodiscard]] std::int64_t small_num() const { return num_; }
  [[nodiscard]] std::int64_t small_den() const { return den_; }

  [[nodiscard]] mpz_class numerator() const;
  [[nodiscard]] mpz_class denominator() const;
  [[nodiscard]] mpq_class to_mpq() const;

  /// Largest integer not above the value.
  [[nodiscard]] mpz_class floor() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static constexpr std::int64_t kMaxInt64 = INT64_MAX;
  static constexpr std::int64_t kMinInt64 = INT64_MIN;

  static Rational from_wide(__int128 num, __int128 den);
  void assign(mpq_class&& value);

  // Inline form: den_ > 0, gcd(num_, den_) == 1, num_ != INT64_MIN.
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

Rational operator*(const BigInt& a, const Rational& b);

}  // namespace maxplus
