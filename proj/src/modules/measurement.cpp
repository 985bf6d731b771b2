#include "common.hpp"

#include "mathgen/solvers.hpp"
#include "registry.hpp"

namespace mathgen::modules {

namespace {

// ---- conversion ------------------------------------------------------------

const std::vector<std::string> kConversion = {
    "How many {to} are there in {x} {from}?",
    "What is {x} {from} in {to}?",
    "Convert {x} {from} to {to}.",
};

std::vector<const UnitInfo*> family_units(UnitFamily f) {
  std::vector<const UnitInfo*> out;
  for (const auto& u : unit_table()) {
    if (u.family == f) out.push_back(&u);
  }
  return out;
}

// Positive integer in [1, 9*10^(s-1)] mapped onto [1, 10^s) minus the
// multiples of ten.
BigInt fraction_digits(GenContext& ctx, unsigned s) {
  BigInt k = ctx.sample(FirstPositive{BigInt(9) * BigInt::pow10(s - 1)}, "fraction");
  return k + (k - BigInt(1)) / BigInt(9);
}

void gen_conversion(GenContext& ctx) {
  static const UnitFamily kFamilies[] = {UnitFamily::Length, UnitFamily::Mass, UnitFamily::Volume, UnitFamily::Time};
  auto units = family_units(kFamilies[ctx.choose(4)]);
  std::uint64_t n = units.size();
  std::uint64_t pair = draw_from_set(ctx.rng(), ctx.budget(), n * (n - 1), "unit_pair");
  const UnitInfo& from = *units[pair / (n - 1)];
  std::size_t j = pair % (n - 1);
  const UnitInfo& to = *units[j >= pair / (n - 1) ? j + 1 : j];

  ExactDecimal x;
  long digits;
  if (ctx.extrapolate()) {
    digits = ctx.choose_range(7, 9);
    BigInt whole = sample_digits(ctx, static_cast<unsigned>(digits), "integer_part");
    unsigned s = static_cast<unsigned>(ctx.choose_range(0, 2));
    BigInt unscaled = s == 0 ? whole : whole * BigInt::pow10(s) + fraction_digits(ctx, s);
    x = ExactDecimal(unscaled, s);
  } else {
    // The text fixes the scale, so the scale may depend on the draw.
    double share = std::max(0.5, ctx.alpha() - ctx.budget().credit());
    BigInt k = ctx.sample(FirstPositive{set_size_for(share)}, "magnitude");
    BigInt u = k + (k - BigInt(1)) / BigInt(9);
    long len = static_cast<long>(u.digit_count());
    long s = std::max(0L, len - 6) + ctx.choose_range(0, 1);
    if (s > 4) throw RetrySignal("magnitude too long");
    x = ExactDecimal(u, static_cast<unsigned>(s));
    digits = static_cast<long>(integer_digits(x.to_rational()));
  }
  if (x.to_rational() == Rational(1)) throw RetrySignal("singular unit");
  Slots s{{"x", x.to_string()}, {"from", std::string(from.plural)}, {"to", std::string(to.plural)}};
  finish(ctx, fill_template(kConversion[pick_template(ctx, kConversion)], s),
         format_number(convert_units(x.to_rational(), from, to)), digits);
}

std::string solve_conversion(std::size_t, const Slots& s, const Environment&) {
  Rational x = ExactDecimal::parse(s.at("x")).to_rational();
  return format_number(convert_units(x, unit_named(s.at("from")), unit_named(s.at("to"))));
}

// ---- time ------------------------------------------------------------------

const std::vector<std::string> kTime = {
    "How many minutes are there between {t1} and {t2}?",
    "What is {m} minutes after {t}?",
    "What is {m} minutes before {t}?",
};

void gen_time(GenContext& ctx) {
  // One credited draw: an unordered pair of distinct minutes of the day.
  // Each template reads the pair back exactly, and no interval crosses midnight.
  const std::uint64_t day = 1440;
  std::uint64_t idx = draw_from_set(ctx.rng(), ctx.budget(), day * (day - 1) / 2, "minute_pair");
  std::uint64_t i = 0;
  while (idx >= day - 1 - i) {
    idx -= day - 1 - i;
    ++i;
  }
  std::uint64_t j = i + 1 + idx;
  ClockTime t1 = ClockTime::from_minutes(static_cast<long>(i));
  ClockTime t2 = ClockTime::from_minutes(static_cast<long>(j));
  long m = static_cast<long>(j - i);
  std::size_t t = pick_template(ctx, kTime);
  if (t > 0 && m == 1) throw RetrySignal("singular minute");
  Slots s;
  std::string answer;
  if (t == 0) {
    s = {{"t1", t1.to_string()}, {"t2", t2.to_string()}};
    answer = std::to_string(m);
  } else if (t == 1) {
    s = {{"m", std::to_string(m)}, {"t", t1.to_string()}};
    answer = t2.to_string();
  } else {
    s = {{"m", std::to_string(m)}, {"t", t2.to_string()}};
    answer = t1.to_string();
  }
  finish(ctx, fill_template(kTime[t], s), answer);
}

std::string solve_time(std::size_t t, const Slots& s, const Environment&) {
  if (t == 0) return std::to_string(time_between(ClockTime::parse(s.at("t1")), ClockTime::parse(s.at("t2"))));
  long m = std::stol(s.at("m"));
  return add_minutes(ClockTime::parse(s.at("t")), t == 1 ? m : -m).to_string();
}

}  // namespace

void register_measurement(Catalog& c) {
  const auto T = ModuleGroup::Train;
  const auto X = ModuleGroup::Extrapolate;
  using K = EntityKind;
  auto add = [&](ModuleSpec sp, Module::Generate g, Module::Solve s) { c.add(Module(std::move(sp), g, s)); };

  {
    auto s = spec("measurement", "conversion", T, kConversion);
    s.inputs = {K::Decimal};
    s.output = K::Rational;
    s.controlled = "integer_digits";
    s.train_max = 6;
    add(s, gen_conversion, solve_conversion);
    auto x = spec("measurement", "conversion", X, kConversion);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = s.output;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_conversion, solve_conversion);
  }
  {
    auto s = spec("measurement", "time", T, kTime);
    s.inputs = {K::Text};
    s.output = K::Text;
    s.dedupe_tests = true;
    // About 10^6 distinct questions exist in total.
    s.max_alpha = 6.0;
    add(s, gen_time, solve_time);
  }
}

}  // namespace mathgen::modules
