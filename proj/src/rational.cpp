#include "maxplus/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace maxplus {
namespace {

using u128 = unsigned __int128;

u128 magnitude(__int128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    if (a <= UINT64_MAX && b <= UINT64_MAX) {
      std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
      while (y != 0) {
        std::uint64_t t = x % y;
        x = y;
        y = t;
      }
      return x;
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_u128(u128 v) {
  mpz_class z;
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return z;
}

mpz_class mpz_from_i128(__int128 v) {
  mpz_class z = mpz_from_u128(magnitude(v));
  if (v < 0) z = -z;
  return z;
}

bool fits_inline(const mpz_class& z) {
  // INT64_MIN is excluded from the inline form so negation never overflows.
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 && z.get_si() != INT64_MIN;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational::Rational(const mpz_class& value) { assign(mpq_class(value)); }

Rational::Rational(const mpq_class& value) {
  mpq_class copy(value);
  copy.canonicalize();
  assign(std::move(copy));
}

Rational::Rational(const Rational& other)
    : num_(other.num_), den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd_u128(magnitude(num), u128(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  Rational r;
  if (num > INT64_MIN && num <= INT64_MAX && den <= INT64_MAX) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  r.assign(std::move(q));
  return r;
}

void Rational::assign(mpq_class&& value) {
  if (fits_inline(value.get_num()) && fits_inline(value.get_den())) {
    num_ = value.get_num().get_si();
    den_ = value.get_den().get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<mpq_class>(std::move(value));
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto check_digits = [&](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw bad();
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw bad();
  };
  auto strip_plus = [](std::string_view s) { return !s.empty() && s[0] == '+' ? s.substr(1) : s; };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    check_digits(text, true);
    return Rational(mpz_class(std::string(strip_plus(text))));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  check_digits(num, true);
  check_digits(den, true);
  mpz_class d(std::string(strip_plus(den)));
  if (d == 0) throw bad();
  mpq_class q(mpz_class(std::string(strip_plus(num))), d);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }

mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::floor() const {
  mpz_class out;
  const mpz_class n = numerator(), d = denominator();
  mpz_fdiv_q(out.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return out;
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(mpq_class(-*big_));
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t sum;
      if (!__builtin_add_overflow(a.num_, b.num_, &sum) && sum != INT64_MIN) {
        Rational r;
        r.num_ = sum;
        return r;
      }
    }
    if (a.den_ == b.den_) return Rational::from_wide(__int128(a.num_) + b.num_, a.den_);
    return Rational::from_wide(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_, __int128(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t diff;
      if (!__builtin_sub_overflow(a.num_, b.num_, &diff) && diff != INT64_MIN) {
        Rational r;
        r.num_ = diff;
        return r;
      }
    }
    if (a.den_ == b.den_) return Rational::from_wide(__int128(a.num_) - b.num_, a.den_);
    return Rational::from_wide(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_, __int128(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return Rational::from_wide(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.sign() == 0) throw std::domain_error("rational division by zero");
  if (!a.big_ && !b.big_) return Rational::from_wide(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
  return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
}

Rational& Rational::operator+=(const Rational& rhs) { return *this = *this + rhs; }
Rational& Rational::operator-=(const Rational& rhs) { return *this = *this - rhs; }
Rational& Rational::operator*=(const Rational& rhs) { return *this = *this * rhs; }
Rational& Rational::operator/=(const Rational& rhs) { return *this = *this / rhs; }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a promoted value never fits inline
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const __int128 lhs = __int128(a.num_) * b.den_;
    const __int128 rhs = __int128(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

Rational operator*(const BigInt& a, const Rational& b) { return Rational(mpq_class(mpq_class(a) * b.to_mpq())); }

}  // namespace maxplus
