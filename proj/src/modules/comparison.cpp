#include "common.hpp"

#include <algorithm>

#include "mathgen/solvers.hpp"
#include "registry.hpp"

namespace mathgen::modules {

namespace {

// Integer, decimal or fraction; the surface text is what the question shows.
NumberToken sample_number(GenContext& ctx, double share, const char* label) {
  switch (ctx.choose(3)) {
    case 0: {
      BigInt v = ctx.sample_symmetric(share, BigInt(1), BigInt(0), label);
      return {Rational(v), v.to_string()};
    }
    case 1: {
      unsigned scale = static_cast<unsigned>(ctx.choose_range(1, 2));
      ExactDecimal d = sample_decimal(ctx, share, scale, label);
      return {d.to_rational(), d.to_string()};
    }
    default: {
      // The denominator is a free choice; the numerator is read back from
      // the text once the denominator is fixed.
      long q = ctx.choose_range(2, 10);
      BigInt p = ctx.sample_symmetric(share, BigInt(q), BigInt(0), label);
      Rational r(p, BigInt(q));
      return {r, r.to_string()};
    }
  }
}

std::string join_texts(const std::vector<NumberToken>& xs) {
  std::vector<std::string> parts;
  for (const auto& x : xs) parts.push_back(x.text);
  return format_list(parts);
}

std::vector<NumberToken> parse_numbers(const std::string& text) {
  std::vector<NumberToken> out;
  for (const auto& item : split_list(text)) out.push_back(NumberToken::from_text(item));
  if (out.size() < 2) throw InvalidInput("list too short");
  return out;
}

bool distinct_values(const std::vector<NumberToken>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i].value == xs[j].value) return false;
    }
  }
  return true;
}

// ---- pair ------------------------------------------------------------------

const std::vector<std::string> kPair = {
    "Which is bigger: {a} or {b}?",
    "Which is smaller: {a} or {b}?",
    "Which is greater: {a} or {b}?",
    "Is {a} less than {b}?",
    "Is {a} greater than {b}?",
    "Is {a} != {b}?",
    "Is {a} < {b}?",
    "Is {a} > {b}?",
    "Is {a} <= {b}?",
    "Is {a} >= {b}?",
    "Are {a} and {b} equal?",
};

std::string pair_answer(std::size_t t, const Rational& a, const Rational& b, const std::string& at,
                        const std::string& bt) {
  switch (t) {
    case 0:
    case 2:
      if (a == b) throw InvalidInput("no bigger value");
      return a > b ? at : bt;
    case 1:
      if (a == b) throw InvalidInput("no smaller value");
      return a < b ? at : bt;
    case 3:
    case 6:
      return format_bool(a < b);
    case 4:
    case 7:
      return format_bool(a > b);
    case 5:
      return format_bool(a != b);
    case 8:
      return format_bool(a <= b);
    case 9:
      return format_bool(a >= b);
    default:
      return format_bool(a == b);
  }
}

std::string slot_text(GenContext& ctx, const NumberToken& x, int depth) {
  if (depth > 0 && x.value.is_integer()) return describe_value(ctx, x.value.num(), depth).text();
  return x.text;
}

void gen_pair(GenContext& ctx) {
  std::size_t t = pick_template(ctx, kPair);
  NumberToken a, b;
  if (t >= 3 && ctx.choose(3) == 0) {
    // Equality is rare under independent draws, so force it sometimes.
    a = sample_number(ctx, ctx.alpha(), "a");
    b = a;
  } else {
    a = sample_number(ctx, ctx.alpha() / 2, "a");
    b = sample_number(ctx, ctx.alpha() / 2, "b");
  }
  if (t <= 2 && a.value == b.value) throw RetrySignal("tie in a which-question");
  auto depths = spread_depth(ctx, 2);
  std::string at = slot_text(ctx, a, depths[0]);
  std::string bt = slot_text(ctx, b, depths[1]);
  if (at == bt && t <= 2) throw RetrySignal("identical surface");
  Slots s{{"a", at}, {"b", bt}};
  finish(ctx, fill_template(kPair[t], s), pair_answer(t, a.value, b.value, at, bt));
}

std::string solve_pair(std::size_t t, const Slots& s, const Environment& env) {
  return pair_answer(t, eval_constant(s.at("a"), env), eval_constant(s.at("b"), env), s.at("a"), s.at("b"));
}

// ---- sort ------------------------------------------------------------------

const std::vector<std::string> kSort = {
    "Sort {list} in increasing order.",
    "Sort {list} in decreasing order.",
    "Put {list} in increasing order.",
    "Put {list} in decreasing order.",
    "Sort {list}.",
};

bool sort_ascending(std::size_t t) { return t != 1 && t != 3; }

void gen_sort(GenContext& ctx) {
  std::vector<NumberToken> xs;
  long n;
  if (ctx.extrapolate()) {
    // Longer lists only fit the answer cap as single digits.
    n = ctx.choose_range(9, 10);
    for (long i = 0; i < n; ++i) {
      BigInt d = ctx.sample(Interval{BigInt(0), BigInt(9)}, "digit");
      xs.push_back({Rational(d), d.to_string()});
    }
  } else {
    n = ctx.choose_range(2, 8);
    for (long i = 0; i < n; ++i) xs.push_back(sample_number(ctx, ctx.alpha() / static_cast<double>(n), "entry"));
    // Equal values with different text would make the order depend on input order.
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        if (xs[i].value == xs[j].value && xs[i].text != xs[j].text) throw RetrySignal("ambiguous tie");
      }
    }
  }
  std::size_t t = pick_template(ctx, kSort);
  Slots s{{"list", join_texts(xs)}};
  finish(ctx, fill_template(kSort[t], s), join_texts(sort_numbers(xs, sort_ascending(t))), n);
}

std::string solve_sort(std::size_t t, const Slots& s, const Environment&) {
  return join_texts(sort_numbers(parse_numbers(s.at("list")), sort_ascending(t)));
}

// ---- closest ---------------------------------------------------------------

const std::vector<std::string> kClosest = {
    "Which is the closest to {t} in {list}?",
    "What is the nearest to {t} in {list}?",
    "Which is the nearest to {t} in {list}?",
    "What is the closest to {t} in {list}?",
};

void gen_closest(GenContext& ctx) {
  long n = ctx.extrapolate() ? ctx.choose_range(9, 16) : ctx.choose_range(3, 8);
  double share = ctx.alpha() / static_cast<double>(n + 1);
  if (ctx.extrapolate()) share = std::max(share, 1.5);
  NumberToken target = sample_number(ctx, share, "target");
  std::vector<NumberToken> xs;
  for (long i = 0; i < n; ++i) xs.push_back(sample_number(ctx, share, "entry"));
  if (!distinct_values(xs)) throw RetrySignal("repeated entry");
  std::vector<Rational> dist;
  for (const auto& x : xs) dist.push_back((x.value - target.value).abs());
  Rational best = *std::min_element(dist.begin(), dist.end());
  if (std::count(dist.begin(), dist.end(), best) != 1) throw RetrySignal("tie for closest");
  Slots s{{"t", target.text}, {"list", join_texts(xs)}};
  finish(ctx, fill_template(kClosest[pick_template(ctx, kClosest)], s), xs[closest_to(target.value, xs)].text, n);
}

std::string solve_closest(std::size_t, const Slots& s, const Environment& env) {
  auto xs = parse_numbers(s.at("list"));
  return xs[closest_to(eval_constant(s.at("t"), env), xs)].text;
}

// ---- kth_biggest -----------------------------------------------------------

const std::vector<std::string> kKth = {
    "What is the {k} biggest value in {list}?",
    "What is the {k} smallest value in {list}?",
    "Which is the {k} biggest value in {list}?",
    "Which is the {k} smallest value in {list}?",
    "What is the biggest value in {list}?",
    "What is the smallest value in {list}?",
};

bool kth_biggest(std::size_t t) { return t % 2 == 0; }

void gen_kth(GenContext& ctx) {
  long n = ctx.extrapolate() ? ctx.choose_range(9, 16) : ctx.choose_range(2, 8);
  double share = ctx.alpha() / static_cast<double>(n);
  if (ctx.extrapolate()) share = std::max(share, 1.5);
  std::vector<NumberToken> xs;
  for (long i = 0; i < n; ++i) xs.push_back(sample_number(ctx, share, "entry"));
  if (!distinct_values(xs)) throw RetrySignal("repeated entry");
  std::size_t t = pick_template(ctx, kKth);
  std::size_t k = t >= 4 ? 1 : static_cast<std::size_t>(ctx.choose_range(1, n));
  Slots s{{"list", join_texts(xs)}};
  if (t < 4) s["k"] = ordinal_word(static_cast<unsigned>(k));
  finish(ctx, fill_template(kKth[t], s), kth_extreme(xs, k, kth_biggest(t)).text, n);
}

std::string solve_kth(std::size_t t, const Slots& s, const Environment&) {
  auto xs = parse_numbers(s.at("list"));
  std::size_t k = t >= 4 ? 1 : ordinal_from_word(s.at("k"));
  if (k > xs.size()) throw InvalidInput("rank beyond the list");
  return kth_extreme(xs, k, kth_biggest(t)).text;
}

}  // namespace

void register_comparison(Catalog& c) {
  const auto T = ModuleGroup::Train;
  const auto X = ModuleGroup::Extrapolate;
  using K = EntityKind;
  auto add = [&](ModuleSpec sp, Module::Generate g, Module::Solve s) { c.add(Module(std::move(sp), g, s)); };
  auto list_pair = [&](const char* name, const char* more, const std::vector<std::string>& tpl, Module::Generate g,
                       Module::Solve sv) {
    auto s = spec("comparison", name, T, tpl);
    s.inputs = {K::Rational};
    s.output = K::Rational;
    s.controlled = "list_length";
    s.train_max = 8;
    add(s, g, sv);
    auto x = spec("comparison", more, X, tpl);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = s.output;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, g, sv);
  };

  list_pair("closest", "closest_more", kClosest, gen_closest, solve_closest);
  list_pair("kth_biggest", "kth_biggest_more", kKth, gen_kth, solve_kth);
  {
    auto s = spec("comparison", "pair", T, kPair);
    s.inputs = {K::Rational, K::Rational};
    s.output = K::Boolean;
    s.composable = true;
    s.dedupe_tests = true;
    add(s, gen_pair, solve_pair);
  }
  list_pair("sort", "sort_more", kSort, gen_sort, solve_sort);
}

}  // namespace mathgen::modules
