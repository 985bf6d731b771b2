#pragma once

// Exact integer, rational and decimal values. BigInt is backed by GMP; the
// rest is built on top of it.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace mathgen {

class BigInt {
 public:
  BigInt() = default;
  BigInt(int v) : v_(v) {}                 // NOLINT(google-explicit-constructor)
  BigInt(long v) : v_(v) {}                // NOLINT(google-explicit-constructor)
  BigInt(long long v);                     // NOLINT(google-explicit-constructor)
  BigInt(unsigned v) : v_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)
  BigInt(unsigned long v) : v_(v) {}       // NOLINT(google-explicit-constructor)
  BigInt(unsigned long long v);            // NOLINT(google-explicit-constructor)
  explicit BigInt(mpz_class v) : v_(std::move(v)) {}

  /// Parses an optionally '-'-prefixed digit string in `base` (2..16,
  /// lowercase digits). Throws ParseError on anything else.
  static BigInt parse(std::string_view text, int base = 10);
  static BigInt pow10(unsigned exponent);

  std::string to_string(int base = 10) const;

  int sign() const { return mpz_sgn(v_.get_mpz_t()); }
  bool is_zero() const { return sign() == 0; }
  bool is_even() const { return mpz_even_p(v_.get_mpz_t()) != 0; }
  BigInt abs() const;
  BigInt pow(unsigned exponent) const;
  /// Number of decimal digits of |x|; zero has one digit.
  std::size_t digit_count() const;
  double log10() const;

  bool fits_int64() const;
  std::int64_t to_int64() const;
  std::uint64_t to_uint64() const;

  const mpz_class& raw() const { return v_; }

  BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
  BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
  BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }

  friend BigInt operator+(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ + b.v_)); }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ - b.v_)); }
  friend BigInt operator*(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ * b.v_)); }
  /// Truncating division (rounds toward zero), like built-in integers.
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);
  BigInt operator-() const { return BigInt(mpz_class(-v_)); }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigInt& x) { return os << x.to_string(); }

 private:
  mpz_class v_;
};

/// Floor division and the matching non-negative remainder for b > 0.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor_mod(const BigInt& a, const BigInt& b);

/// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int v) : num_(v), den_(1) {}            // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v), den_(1) {}           // NOLINT(google-explicit-constructor)
  Rational(long long v) : num_(v), den_(1) {}      // NOLINT(google-explicit-constructor)
  Rational(BigInt v) : num_(std::move(v)), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Throws InvalidInput on zero denominator.
  Rational(BigInt num, BigInt den);

  /// Accepts "p", "-p", "p/q", "-p/q" and decimals such as "-0.25".
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_integer() const { return den_ == BigInt(1); }
  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  Rational abs() const { return Rational(num_.abs(), den_); }
  Rational reciprocal() const;
  Rational pow(long exponent) const;
  BigInt floor() const { return floor_div(num_, den_); }
  /// True iff the denominator has no prime factors other than 2 and 5.
  bool is_terminating() const;
  double to_double() const;

  /// "p" or "p/q".
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_, Canonical{}); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

 private:
  struct Canonical {};
  Rational(BigInt num, BigInt den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

  BigInt num_;
  BigInt den_;
};

enum class HalfRule { AwayFromZero, ToEven };

/// unscaled / 10^scale, kept without trailing zeros in `unscaled`.
class ExactDecimal {
 public:
  ExactDecimal() = default;
  ExactDecimal(BigInt unscaled, unsigned scale);

  static ExactDecimal parse(std::string_view text);
  /// Exact conversion; nullopt if the rational does not terminate.
  static std::optional<ExactDecimal> from_rational(const Rational& r);

  const BigInt& unscaled() const { return unscaled_; }
  unsigned scale() const { return scale_; }
  Rational to_rational() const;
  bool is_integer() const { return scale_ == 0; }
  std::string to_string() const;

  friend ExactDecimal operator+(const ExactDecimal& a, const ExactDecimal& b);
  friend ExactDecimal operator-(const ExactDecimal& a, const ExactDecimal& b);
  friend ExactDecimal operator*(const ExactDecimal& a, const ExactDecimal& b);
  ExactDecimal operator-() const { return ExactDecimal(-unscaled_, scale_); }

  friend bool operator==(const ExactDecimal&, const ExactDecimal&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ExactDecimal& x) { return os << x.to_string(); }

 private:
  BigInt unscaled_;
  unsigned scale_ = 0;
};

/// Signed numeral in radix 2..16 with lowercase digits and no leading zeros.
struct BaseNumeral {
  bool negative = false;
  std::string digits = "0";
  int radix = 10;

  /// Throws ParseError for digits outside the radix, InvalidInput for a bad radix.
  static BaseNumeral parse(std::string_view text, int radix);
  static BaseNumeral from_value(const BigInt& value, int radix);

  BigInt value() const;
  std::string to_string() const { return negative ? "-" + digits : digits; }

  friend bool operator==(const BaseNumeral&, const BaseNumeral&) = default;
};

}  // namespace mathgen
