#include "mathgen/numeric.hpp"

#include <cmath>
#include <limits>

#include "mathgen/errors.hpp"

namespace mathgen {

namespace {

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

BigInt::BigInt(long long v) : v_(static_cast<long>(v)) {
  static_assert(sizeof(long) == sizeof(long long), "LP64 assumed");
}

BigInt::BigInt(unsigned long long v) : v_(static_cast<unsigned long>(v)) {}

BigInt BigInt::parse(std::string_view text, int base) {
  if (base < 2 || base > 16) throw InvalidInput("radix out of range: " + std::to_string(base));
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  if (i == text.size()) throw ParseError("expected digits", i);
  std::string digits;
  for (; i < text.size(); ++i) {
    int d = digit_value(text[i]);
    if (d < 0 || d >= base) throw ParseError("invalid digit '" + std::string(1, text[i]) + "'", i);
    digits.push_back(text[i]);
  }
  mpz_class v(digits, base);
  if (negative) v = -v;
  return BigInt(std::move(v));
}

BigInt BigInt::pow10(unsigned exponent) { return BigInt(10).pow(exponent); }

std::string BigInt::to_string(int base) const { return v_.get_str(base); }

BigInt BigInt::abs() const { return BigInt(mpz_class(::abs(v_))); }

BigInt BigInt::pow(unsigned exponent) const {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), v_.get_mpz_t(), exponent);
  return BigInt(std::move(r));
}

std::size_t BigInt::digit_count() const {
  if (is_zero()) return 1;
  std::string s = abs().to_string();
  return s.size();
}

double BigInt::log10() const {
  if (sign() <= 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mantissa = mpz_get_d_2exp(&exp, v_.get_mpz_t());
  return std::log10(mantissa) + static_cast<double>(exp) * std::log10(2.0);
}

bool BigInt::fits_int64() const { return v_.fits_slong_p(); }

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw InvalidInput("integer does not fit in 64 bits: " + to_string());
  return v_.get_si();
}

std::uint64_t BigInt::to_uint64() const {
  if (!v_.fits_ulong_p()) throw InvalidInput("integer does not fit in unsigned 64 bits: " + to_string());
  return v_.get_ui();
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw InvalidInput("division by zero");
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return BigInt(std::move(q));
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw InvalidInput("division by zero");
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return BigInt(std::move(r));
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw InvalidInput("division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigInt(std::move(q));
}

BigInt floor_mod(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw InvalidInput("division by zero");
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigInt(std::move(r));
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(BigInt num, BigInt den) {
  if (den.is_zero()) throw InvalidInput("zero denominator");
  if (den.sign() < 0) {
    num = -num;
    den = -den;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.raw().get_mpz_t(), den.raw().get_mpz_t());
  if (g != 1) {
    BigInt gb(g);
    num = num / gb;
    den = den / gb;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt n = BigInt::parse(text.substr(0, slash));
    BigInt d;
    try {
      d = BigInt::parse(text.substr(slash + 1));
    } catch (const ParseError& e) {
      throw ParseError("invalid denominator", slash + 1 + e.position());
    }
    if (d.sign() <= 0) throw ParseError("denominator must be positive", slash + 1);
    return Rational(n, d);
  }
  if (text.find('.') != std::string_view::npos) return ExactDecimal::parse(text).to_rational();
  return Rational(BigInt::parse(text));
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw InvalidInput("reciprocal of zero");
  return Rational(den_, num_);
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  auto e = static_cast<unsigned>(exponent);
  return Rational(num_.pow(e), den_.pow(e), Canonical{});
}

bool Rational::is_terminating() const {
  mpz_class d = den_.raw();
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) d /= 5;
  return d == 1;
}

double Rational::to_double() const {
  mpq_class q(num_.raw(), den_.raw());
  return q.get_d();
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return Rational(a.num_ + b.num_, a.den_);
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw InvalidInput("division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

// ---------------------------------------------------------------------------
// ExactDecimal

ExactDecimal::ExactDecimal(BigInt unscaled, unsigned scale)
    : unscaled_(std::move(unscaled)), scale_(scale) {
  const BigInt ten(10);
  while (scale_ > 0 && (unscaled_ % ten).is_zero()) {
    unscaled_ = unscaled_ / ten;
    --scale_;
  }
}

ExactDecimal ExactDecimal::parse(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return ExactDecimal(BigInt::parse(text), 0);
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty()) throw ParseError("expected digits after '.'", dot + 1);
  std::string combined(whole);
  if (combined.empty() || combined == "-") combined += "0";
  for (std::size_t i = 0; i < frac.size(); ++i) {
    if (frac[i] < '0' || frac[i] > '9') throw ParseError("invalid digit", dot + 1 + i);
  }
  combined += frac;
  return ExactDecimal(BigInt::parse(combined), static_cast<unsigned>(frac.size()));
}

std::optional<ExactDecimal> ExactDecimal::from_rational(const Rational& r) {
  if (!r.is_terminating()) return std::nullopt;
  unsigned scale = 0;
  BigInt pow(1);
  while (!(pow % r.den()).is_zero()) {
    pow *= BigInt(10);
    ++scale;
  }
  return ExactDecimal(r.num() * (pow / r.den()), scale);
}

Rational ExactDecimal::to_rational() const { return Rational(unscaled_, BigInt::pow10(scale_)); }

std::string ExactDecimal::to_string() const {
  if (scale_ == 0) return unscaled_.to_string();
  std::string digits = unscaled_.abs().to_string();
  if (digits.size() <= scale_) digits.insert(0, scale_ + 1 - digits.size(), '0');
  digits.insert(digits.size() - scale_, ".");
  return unscaled_.sign() < 0 ? "-" + digits : digits;
}

namespace {

std::pair<BigInt, BigInt> aligned(const ExactDecimal& a, const ExactDecimal& b, unsigned& scale) {
  scale = std::max(a.scale(), b.scale());
  return {a.unscaled() * BigInt::pow10(scale - a.scale()), b.unscaled() * BigInt::pow10(scale - b.scale())};
}

}  // namespace

ExactDecimal operator+(const ExactDecimal& a, const ExactDecimal& b) {
  unsigned scale = 0;
  auto [x, y] = aligned(a, b, scale);
  return ExactDecimal(x + y, scale);
}

ExactDecimal operator-(const ExactDecimal& a, const ExactDecimal& b) { return a + (-b); }

ExactDecimal operator*(const ExactDecimal& a, const ExactDecimal& b) {
  return ExactDecimal(a.unscaled_ * b.unscaled_, a.scale_ + b.scale_);
}

// ---------------------------------------------------------------------------
// BaseNumeral

BaseNumeral BaseNumeral::parse(std::string_view text, int radix) {
  return from_value(BigInt::parse(text, radix), radix);
}

BaseNumeral BaseNumeral::from_value(const BigInt& value, int radix) {
  if (radix < 2 || radix > 16) throw InvalidInput("radix out of range: " + std::to_string(radix));
  BaseNumeral n;
  n.radix = radix;
  n.negative = value.sign() < 0;
  n.digits = value.abs().to_string(radix);
  return n;
}

BigInt BaseNumeral::value() const {
  BigInt v = BigInt::parse(digits, radix);
  return negative ? -v : v;
}

}  // namespace mathgen
