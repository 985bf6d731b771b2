#include "common.hpp"

#include <cmath>

#include "mathgen/number_theory.hpp"
#include "registry.hpp"

namespace mathgen::modules {

namespace {

BigInt integer_slot(const Slots& s, const char* name, const Environment& env) {
  Rational v = eval_constant(s.at(name), env);
  if (!v.is_integer()) throw InvalidInput(std::string(name) + " is not an integer");
  return v.num();
}

// ---- base_conversion -------------------------------------------------------

const std::vector<std::string> kBase = {
    "Convert {x} (base {from}) to base {to}.",
    "What is {x} (base {from}) in base {to}?",
};

void gen_base_conversion(GenContext& ctx) {
  // One side is usually base 10.
  long from = ctx.choose_range(2, 16);
  long to = ctx.choose_range(2, 16);
  if (ctx.coin()) {
    (ctx.coin() ? from : to) = 10;
  }
  if (from == to) throw RetrySignal("same base");
  BigInt v = ctx.sample_symmetric(ctx.alpha(), BigInt(20), BigInt(0), "value");
  Slots s{{"x", BaseNumeral::from_value(v, static_cast<int>(from)).to_string()},
          {"from", std::to_string(from)},
          {"to", std::to_string(to)}};
  std::size_t t = ctx.choose(2);
  finish(ctx, fill_template(kBase[t], s), BaseNumeral::from_value(v, static_cast<int>(to)).to_string());
}

std::string solve_base_conversion(std::size_t, const Slots& s, const Environment&) {
  int from = std::stoi(s.at("from")), to = std::stoi(s.at("to"));
  return base_convert(BaseNumeral::parse(s.at("x"), from), to).to_string();
}

// ---- div_remainder ---------------------------------------------------------

const std::vector<std::string> kRemainder = {
    "What is the remainder when {a} is divided by {b}?",
    "Calculate the remainder when {a} is divided by {b}.",
};

void gen_div_remainder(GenContext& ctx) {
  BigInt b = ctx.sample(Interval{BigInt(2), BigInt(1) + set_size_for(ctx.alpha() / 3)}, "divisor");
  BigInt q = ctx.sample_positive(ctx.alpha() / 3, BigInt(2), BigInt(0), "quotient");
  BigInt r = ctx.sample(Interval{BigInt(0), b - BigInt(1)}, "remainder");
  BigInt a = q * b + r;
  auto depths = spread_depth(ctx, 2);
  ValueSlot as = describe_value(ctx, a, depths[0]);
  ValueSlot bs = describe_value(ctx, b, depths[1]);
  Slots s{{"a", as.text()}, {"b", bs.text()}};
  finish(ctx, fill_template(kRemainder[pick_template(ctx, kRemainder)], s), r.to_string());
}

std::string solve_div_remainder(std::size_t, const Slots& s, const Environment& env) {
  BigInt a = integer_slot(s, "a", env), b = integer_slot(s, "b", env);
  if (b.sign() <= 0) throw InvalidInput("divisor must be positive");
  return div_remainder(a, b).remainder.to_string();
}

// ---- gcd / lcm -------------------------------------------------------------

const std::vector<std::string> kGcd = {
    "What is the greatest common divisor of {a} and {b}?",
    "Calculate the greatest common factor of {a} and {b}.",
    "What is the highest common factor of {a} and {b}?",
    "Calculate the highest common divisor of {a} and {b}.",
};

const std::vector<std::string> kLcm = {
    "What is the least common multiple of {a} and {b}?",
    "Calculate the lowest common multiple of {a} and {b}.",
    "What is the smallest common multiple of {a} and {b}?",
};

// a = g*m1, b = g*m2 with gcd(m1, m2) = 1.
std::pair<BigInt, BigInt> gcd_pair(GenContext& ctx) {
  double share = ctx.alpha() / 3;
  BigInt g = ctx.sample_positive(share, BigInt(2), BigInt(0), "g");
  BigInt m1 = ctx.sample_positive(share, BigInt(3), BigInt(0), "m1");
  BigInt m2 = ctx.sample(CoprimeTo{m1, BigInt(1), std::max(set_size_for(share), BigInt(3))}, "m2");
  if (m1 == m2) throw RetrySignal("equal operands");
  return {g * m1, g * m2};
}

void gen_gcd_like(GenContext& ctx, bool least) {
  auto [a, b] = gcd_pair(ctx);
  auto depths = spread_depth(ctx, 2);
  ValueSlot as = describe_value(ctx, a, depths[0]);
  ValueSlot bs = describe_value(ctx, b, depths[1]);
  Slots s{{"a", as.text()}, {"b", bs.text()}};
  const auto& tpl = least ? kLcm : kGcd;
  finish(ctx, fill_template(tpl[pick_template(ctx, tpl)], s), (least ? lcm(a, b) : gcd(a, b)).to_string());
}

std::string solve_gcd(std::size_t, const Slots& s, const Environment& env) {
  return gcd(integer_slot(s, "a", env), integer_slot(s, "b", env)).to_string();
}

std::string solve_lcm(std::size_t, const Slots& s, const Environment& env) {
  return lcm(integer_slot(s, "a", env), integer_slot(s, "b", env)).to_string();
}

// ---- is_factor -------------------------------------------------------------

const std::vector<std::string> kFactor = {
    "Is {d} a factor of {n}?",
    "Does {d} divide {n}?",
    "Is {n} a multiple of {d}?",
    "Is {d} a factor of both {n} and {m}?",
};

BigInt factor_candidate(GenContext& ctx, const BigInt& d, bool divisible, double share) {
  BigInt k = ctx.sample_positive(share, BigInt(2), BigInt(0), "multiplier");
  if (divisible) return d * k;
  return d * k + ctx.sample(Interval{BigInt(1), d - BigInt(1)}, "offset");
}

void gen_is_factor(GenContext& ctx) {
  std::size_t t = pick_template(ctx, kFactor);
  bool both = t == 3;
  BigInt d = both ? ctx.sample(Interval{BigInt(2), BigInt(12)}, "divisor")
                  : ctx.sample(Interval{BigInt(2), BigInt(1) + set_size_for(ctx.alpha() / 3)}, "divisor");
  double share = both ? (ctx.alpha() - 1) / 2 : ctx.alpha() * 2 / 3;
  bool truth;
  BigInt n, m;
  if (both) {
    bool dn = ctx.coin(), dm = ctx.coin();
    n = factor_candidate(ctx, d, dn, share);
    m = factor_candidate(ctx, d, dm, share);
    truth = dn && dm;
  } else {
    truth = ctx.coin();
    n = factor_candidate(ctx, d, truth, share);
  }
  auto depths = spread_depth(ctx, both ? 2 : 1);
  Slots s{{"d", d.to_string()}, {"n", describe_value(ctx, n, depths[0]).text()}};
  if (both) s["m"] = describe_value(ctx, m, depths[1]).text();
  finish(ctx, fill_template(kFactor[t], s), format_bool(truth));
}

std::string solve_is_factor(std::size_t t, const Slots& s, const Environment& env) {
  BigInt d = integer_slot(s, "d", env);
  bool r = is_factor(d, integer_slot(s, "n", env));
  if (t == 3) r = r && is_factor(d, integer_slot(s, "m", env));
  return format_bool(r);
}

// ---- is_prime --------------------------------------------------------------

const std::vector<std::string> kPrime = {
    "Is {n} prime?",
    "Is {n} a prime number?",
    "Is {n} composite?",
};

void gen_is_prime(GenContext& ctx) {
  // Candidates come from [2, x] with x large enough that the primes alone
  // (at least x / ln x of them) reach the target.
  double need = std::pow(10.0, ctx.alpha());
  double x = std::max(100.0, need * std::log(need * 30));
  while (prime_count_lower(x) < need) x *= 1.1;
  BigInt hi(static_cast<unsigned long long>(std::ceil(x)));
  bool want_prime = ctx.coin();
  BigInt n;
  while (true) {
    n = ctx.rng().range(BigInt(2), hi);
    if (is_prime(n) == want_prime) break;
  }
  double size = want_prime ? prime_count_lower(x) : x - 1 - prime_count_upper(x);
  ctx.budget().record(BigInt(static_cast<unsigned long long>(std::floor(size))), want_prime ? "prime" : "composite");
  std::size_t t = pick_template(ctx, kPrime);
  Slots s{{"n", describe_value(ctx, n, ctx.depth()).text()}};
  bool answer = t == 2 ? !want_prime : want_prime;
  finish(ctx, fill_template(kPrime[t], s), format_bool(answer));
}

std::string solve_is_prime(std::size_t t, const Slots& s, const Environment& env) {
  BigInt n = integer_slot(s, "n", env);
  if (n < BigInt(2)) throw InvalidInput("primality of n < 2");
  bool p = is_prime(n);
  return format_bool(t == 2 ? !p : p);
}

// ---- list_prime_factors ----------------------------------------------------

const std::vector<std::string> kPrimeFactors = {
    "What are the prime factors of {n}?",
    "List the prime factors of {n}.",
    "Give the prime factors of {n}.",
};

void gen_prime_factors(GenContext& ctx) {
  BigInt n = ctx.sample(Interval{BigInt(2), BigInt(1) + set_size_for(ctx.alpha())}, "n");
  Slots s{{"n", describe_value(ctx, n, ctx.depth()).text()}};
  finish(ctx, fill_template(kPrimeFactors[pick_template(ctx, kPrimeFactors)], s),
         format_prime_factors(prime_factorize(n)));
}

std::string solve_prime_factors(std::size_t, const Slots& s, const Environment& env) {
  return format_prime_factors(prime_factorize(integer_slot(s, "n", env)));
}

// ---- place_value -----------------------------------------------------------

const std::vector<std::string> kPlace = {
    "What is the {place} digit of {n}?",
};

void gen_place_value(GenContext& ctx) {
  BigInt n;
  long digits;
  if (ctx.extrapolate()) {
    digits = ctx.choose_range(11, 20);
    n = sample_digits(ctx, static_cast<unsigned>(digits), "n");
  } else {
    n = ctx.sample_positive(ctx.alpha(), BigInt(10), BigInt(0), "n");
    digits = static_cast<long>(n.digit_count());
    if (digits > 10) throw RetrySignal("too many digits for training");
  }
  int place = static_cast<int>(ctx.choose(static_cast<std::size_t>(digits)));
  ValueSlot v = describe_value(ctx, n, ctx.extrapolate() ? 0 : ctx.depth());
  Slots s{{"place", place_name(place)}, {"n", v.text()}};
  finish(ctx, fill_template(kPlace[0], s), std::to_string(place_value(ExactDecimal(n, 0), place)), digits);
}

std::string solve_place_value(std::size_t, const Slots& s, const Environment& env) {
  Rational v = eval_constant(s.at("n"), env);
  auto d = ExactDecimal::from_rational(v);
  if (!d) throw InvalidInput("place value of a non-terminating number");
  return std::to_string(place_value(*d, place_from_name(s.at("place"))));
}

// ---- round_number ----------------------------------------------------------

const std::vector<std::string> kRound = {
    "Round {x} to {k} decimal places.",
    "Round {x} to one decimal place.",
    "Give {x} to {k} decimal places.",
    "What is {x} rounded to {k} decimal places?",
    "Round {x} to the nearest {unit}.",
    "What is {x} rounded to the nearest {unit}?",
};

const std::vector<std::string> kUnits = {"integer", "ten", "hundred", "thousand", "ten thousand", "hundred thousand",
                                         "million"};

int unit_places(std::string_view unit) {
  for (std::size_t i = 0; i < kUnits.size(); ++i) {
    if (kUnits[i] == unit) return -static_cast<int>(i);
  }
  throw ParseError("unknown rounding unit '" + std::string(unit) + "'");
}

void gen_round(GenContext& ctx) {
  bool to_unit = ctx.coin();
  int places;
  std::size_t t;
  Slots s;
  if (to_unit) {
    int j = static_cast<int>(ctx.choose(kUnits.size()));
    places = -j;
    t = ctx.coin() ? 4 : 5;
    s["unit"] = kUnits[static_cast<std::size_t>(j)];
  } else {
    places = static_cast<int>(ctx.choose_range(1, 4));
    t = places == 1 ? 1 : pick_from(ctx, {0, 2, 3});
    s["k"] = count_word(static_cast<unsigned>(places));
  }
  unsigned scale = static_cast<unsigned>(std::max(0, places) + ctx.choose_range(1, 3));
  if (to_unit && ctx.coin()) scale = 0;
  ExactDecimal x;
  long controlled;
  if (ctx.extrapolate()) {
    unsigned d = static_cast<unsigned>(ctx.choose_range(11, 20));
    BigInt whole = sample_digits(ctx, d, "integer_part");
    BigInt frac = scale ? sample_digits(ctx, scale, "fraction") : BigInt(0);
    BigInt unscaled = whole * BigInt::pow10(scale) + frac;
    x = ExactDecimal(signed_value(ctx, unscaled), scale);
    controlled = d;
  } else {
    BigInt w = std::max(symmetric_width_for(ctx.alpha()), BigInt::pow10(scale + 1));
    x = ExactDecimal(ctx.sample(Symmetric{w}, "x"), scale);
    controlled = integer_digits(x.to_rational());
    if (controlled > 10) throw RetrySignal("integer part too long for training");
  }
  if (x.scale() == 0 && places >= 0) throw RetrySignal("nothing to round");
  s["x"] = x.to_string();
  finish(ctx, fill_template(kRound[t], s), round_to_place(x, places).to_string(), controlled);
}

std::string solve_round(std::size_t t, const Slots& s, const Environment&) {
  ExactDecimal x = ExactDecimal::parse(s.at("x"));
  int places;
  if (t == 1) {
    places = 1;
  } else if (t >= 4) {
    places = unit_places(s.at("unit"));
  } else {
    places = static_cast<int>(count_from_word(s.at("k")));
  }
  return round_to_place(x, places).to_string();
}

}  // namespace

void register_numbers(Catalog& c) {
  const auto T = ModuleGroup::Train;
  const auto X = ModuleGroup::Extrapolate;
  using K = EntityKind;
  auto add = [&](ModuleSpec sp, Module::Generate g, Module::Solve s) { c.add(Module(std::move(sp), g, s)); };

  {
    auto s = spec("numbers", "base_conversion", T, kBase);
    s.inputs = {K::Integer};
    s.output = K::Text;
    add(s, gen_base_conversion, solve_base_conversion);
  }
  {
    auto s = spec("numbers", "div_remainder", T, kRemainder);
    s.inputs = {K::Integer, K::Integer};
    s.composable = true;
    add(s, gen_div_remainder, solve_div_remainder);
  }
  {
    auto s = spec("numbers", "gcd", T, kGcd);
    s.inputs = {K::Integer, K::Integer};
    s.composable = true;
    add(s, [](GenContext& ctx) { gen_gcd_like(ctx, false); }, solve_gcd);
  }
  {
    auto s = spec("numbers", "is_factor", T, kFactor);
    s.inputs = {K::Integer, K::Integer};
    s.output = K::Boolean;
    s.composable = true;
    add(s, gen_is_factor, solve_is_factor);
  }
  {
    auto s = spec("numbers", "is_prime", T, kPrime);
    s.inputs = {K::Integer};
    s.output = K::Boolean;
    s.composable = true;
    s.dedupe_tests = true;
    add(s, gen_is_prime, solve_is_prime);
  }
  {
    auto s = spec("numbers", "lcm", T, kLcm);
    s.inputs = {K::Integer, K::Integer};
    s.composable = true;
    add(s, [](GenContext& ctx) { gen_gcd_like(ctx, true); }, solve_lcm);
  }
  {
    auto s = spec("numbers", "list_prime_factors", T, kPrimeFactors);
    s.inputs = {K::Integer};
    s.output = K::Text;
    s.composable = true;
    add(s, gen_prime_factors, solve_prime_factors);
  }
  {
    auto s = spec("numbers", "place_value", T, kPlace);
    s.inputs = {K::Integer};
    s.composable = true;
    s.controlled = "digits";
    s.train_max = 10;
    add(s, gen_place_value, solve_place_value);
    auto x = spec("numbers", "place_value_big", X, kPlace);
    x.base = s.id;
    x.inputs = s.inputs;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_place_value, solve_place_value);
  }
  {
    auto s = spec("numbers", "round_number", T, kRound);
    s.inputs = {K::Decimal};
    s.output = K::Decimal;
    s.controlled = "integer_digits";
    s.train_max = 10;
    add(s, gen_round, solve_round);
    auto x = spec("numbers", "round_number_big", X, kRound);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = s.output;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_round, solve_round);
  }
}

}  // namespace mathgen::modules
