#include "common.hpp"

#include <array>
#include <cctype>
#include <cmath>

namespace mathgen::modules {

std::string format_number(const Rational& r) {
  if (r.is_integer()) return r.num().to_string();
  if (auto d = ExactDecimal::from_rational(r)) return d->to_string();
  return r.to_string();
}

namespace {

constexpr std::array<std::string_view, 21> kCounts = {
    "zero",    "one",     "two",       "three",    "four",     "five",    "six",
    "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
    "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen", "twenty"};

constexpr std::array<std::string_view, 21> kOrdinals = {
    "zeroth",     "first",      "second",      "third",      "fourth",      "fifth",      "sixth",
    "seventh",    "eighth",     "ninth",       "tenth",      "eleventh",    "twelfth",    "thirteenth",
    "fourteenth", "fifteenth",  "sixteenth",   "seventeenth", "eighteenth", "nineteenth", "twentieth"};

std::string lower(std::string_view w) {
  std::string s(w);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string count_word(unsigned n, bool capital) {
  if (n >= kCounts.size()) return std::to_string(n);
  std::string s(kCounts[n]);
  if (capital) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

unsigned count_from_word(std::string_view w) {
  std::string s = lower(w);
  for (unsigned i = 0; i < kCounts.size(); ++i) {
    if (kCounts[i] == s) return i;
  }
  throw ParseError("unknown count word '" + std::string(w) + "'");
}

std::string ordinal_word(unsigned k) {
  if (k >= kOrdinals.size()) throw InvalidInput("ordinal out of range");
  return std::string(kOrdinals[k]);
}

unsigned ordinal_from_word(std::string_view w) {
  for (unsigned i = 1; i < kOrdinals.size(); ++i) {
    if (kOrdinals[i] == w) return i;
  }
  throw ParseError("unknown ordinal '" + std::string(w) + "'");
}

BigInt sample_digits(GenContext& ctx, unsigned digits, const char* label) {
  if (digits == 0) throw InvalidInput("zero digits");
  BigInt lo = digits == 1 ? BigInt(0) : BigInt::pow10(digits - 1);
  BigInt hi = BigInt::pow10(digits) - BigInt(1);
  return ctx.sample(Interval{lo, hi}, label);
}

BigInt signed_value(GenContext& ctx, const BigInt& v) {
  std::uint64_t s = draw_from_set(ctx.rng(), ctx.budget(), 2, "sign");
  return s ? -v : v;
}

ExactDecimal sample_decimal(GenContext& ctx, double alpha_share, unsigned scale, const char* label) {
  // k-th positive integer not divisible by 10 is k + (k - 1) / 9.
  BigInt n = set_size_for(std::max(0.0, alpha_share - std::log10(2.0)));
  BigInt k = ctx.sample(FirstPositive{n}, label);
  BigInt u = scale == 0 ? k : k + (k - BigInt(1)) / BigInt(9);
  return ExactDecimal(signed_value(ctx, u), scale);
}

Expression scaled(const BigInt& k, Expression e) {
  if (k == BigInt(1)) return e;
  if (k == BigInt(-1)) return Expression::neg(e);
  return Expression::mul(Expression::integer(k), e);
}

std::vector<std::string> split_list(std::string_view text) {
  std::string t(text);
  for (std::size_t p; (p = t.find(" and ")) != std::string::npos;) t.replace(p, 5, ", ");
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto p = t.find(", ", start);
    std::string item = t.substr(start, p == std::string::npos ? std::string::npos : p - start);
    // "a, b, and c"
    if (item.rfind(", ", 0) == 0) item = item.substr(2);
    if (!item.empty()) out.push_back(item);
    if (p == std::string::npos) return out;
    start = p + 2;
  }
}

void finish(GenContext& ctx, std::string question, std::string answer, long controlled) {
  ctx.plan().question = std::move(question);
  ctx.plan().answer = std::move(answer);
  ctx.plan().controlled = controlled;
}

std::size_t pick_template(GenContext& ctx, const std::vector<std::string>& templates) {
  return ctx.choose(templates.size());
}

std::size_t pick_from(GenContext& ctx, std::initializer_list<std::size_t> indices) {
  return *(indices.begin() + ctx.choose(indices.size()));
}

unsigned integer_digits(const Rational& r) {
  BigInt whole = r.abs().floor();
  return static_cast<unsigned>(whole.is_zero() ? 1 : whole.digit_count());
}

ModuleSpec spec(std::string area, std::string name, ModuleGroup group, std::vector<std::string> templates) {
  ModuleSpec s;
  s.id = area + "/" + name;
  s.area = std::move(area);
  s.name = std::move(name);
  s.group = group;
  s.templates = std::move(templates);
  return s;
}

}  // namespace mathgen::modules
