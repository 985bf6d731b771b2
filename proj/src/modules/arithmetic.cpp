#include "common.hpp"

#include <algorithm>

#include "mathgen/generators.hpp"
#include "mathgen/number_theory.hpp"
#include "registry.hpp"

namespace mathgen::modules {

namespace {

constexpr RenderStyle kSpaced{true};

Rational slot_value(const Slots& s, const char* name, const Environment& env) {
  return eval_constant(s.at(name), env);
}

// Operand as decimal text with `scale` places (scale 0 gives an integer).
Expression decimal_operand(const BigInt& unscaled, unsigned scale) {
  if (scale == 0) return Expression::integer(unscaled);
  return Expression::decimal(ExactDecimal(unscaled, scale));
}

// ---- add_or_sub ------------------------------------------------------------

const std::vector<std::string> kAddSub = {
    "Calculate {expr}.",       "What is {expr}?",          "Work out {expr}.",
    "Add {a} and {b}.",        "Sum {a} and {b}.",         "Subtract {b} from {a}.",
    "What is {a} minus {b}?",  "What is {a} take away {b}?", "Total of {a} and {b}.",
};

void gen_add_or_sub(GenContext& ctx) {
  Expression a, b;
  bool subtract = ctx.coin();
  long controlled = 0;
  if (ctx.extrapolate()) {
    unsigned da = static_cast<unsigned>(ctx.choose_range(11, 20));
    unsigned db = static_cast<unsigned>(ctx.choose_range(11, 20));
    a = Expression::integer(signed_value(ctx, sample_digits(ctx, da, "a")));
    b = Expression::integer(signed_value(ctx, sample_digits(ctx, db, "b")));
    controlled = std::max(da, db);
  } else if (ctx.choose(3) == 0) {
    // Decimal operands, drawn forward.
    double share = ctx.alpha() / 2;
    for (Expression* op : {&a, &b}) {
      unsigned scale = ctx.coin() ? 0 : static_cast<unsigned>(ctx.choose_range(1, 4));
      *op = decimal_operand(ctx.sample_symmetric(share, BigInt(9)), scale);
    }
  } else {
    // Answer first, then one operand; the other is forced.
    BigInt answer = ctx.sample_symmetric(ctx.alpha() / 2, BigInt(9), BigInt(0), "answer");
    BigInt first = ctx.sample_symmetric(ctx.alpha() / 2, BigInt(9), BigInt(0), "operand");
    BigInt second = subtract ? first - answer : answer - first;
    a = Expression::integer(first);
    b = Expression::integer(second);
  }
  if (!ctx.extrapolate()) {
    controlled = std::max(integer_digits(a.value()), integer_digits(b.value()));
    if (controlled > 10) throw RetrySignal("operand too long for training");
  }
  Rational value = subtract ? a.value() - b.value() : a.value() + b.value();
  Slots s{{"a", a.render()}, {"b", b.render()}};
  s["expr"] = (subtract ? Expression::sub(a, b) : Expression::add(a, b)).render();
  std::size_t t = subtract ? pick_from(ctx, {0, 1, 2, 5, 6, 7}) : pick_from(ctx, {0, 1, 2, 3, 4, 8});
  finish(ctx, fill_template(kAddSub[t], s), format_number(value), controlled);
}

std::string solve_add_or_sub(std::size_t t, const Slots& s, const Environment& env) {
  if (t <= 2) return format_number(slot_value(s, "expr", env));
  Rational a = slot_value(s, "a", env), b = slot_value(s, "b", env);
  bool subtract = t >= 5 && t <= 7;
  return format_number(subtract ? a - b : a + b);
}

// ---- add_or_sub_in_base ----------------------------------------------------

const std::vector<std::string> kInBase = {
    "In base {base}, what is {a} + {b}?",
    "In base {base}, what is {a} - {b}?",
};

void gen_in_base(GenContext& ctx) {
  static const std::vector<int> bases = {2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15, 16};
  int base = ctx.rng().pick(bases);
  BigInt a = ctx.sample_symmetric(ctx.alpha() / 2, BigInt(9), BigInt(0), "a");
  BigInt b = ctx.sample_symmetric(ctx.alpha() / 2, BigInt(9), BigInt(0), "b");
  std::size_t t = ctx.choose(2);
  BigInt value = t == 0 ? a + b : a - b;
  Slots s{{"base", std::to_string(base)},
          {"a", BaseNumeral::from_value(a, base).to_string()},
          {"b", BaseNumeral::from_value(b, base).to_string()}};
  finish(ctx, fill_template(kInBase[t], s), BaseNumeral::from_value(value, base).to_string());
}

std::string solve_in_base(std::size_t t, const Slots& s, const Environment&) {
  int base = std::stoi(s.at("base"));
  BigInt a = BaseNumeral::parse(s.at("a"), base).value();
  BigInt b = BaseNumeral::parse(s.at("b"), base).value();
  return BaseNumeral::from_value(t == 0 ? a + b : a - b, base).to_string();
}

// ---- add_sub_multiple ------------------------------------------------------

const std::vector<std::string> kMultiple = {
    "Calculate {expr}.",
    "What is {expr}?",
    "Evaluate {expr}.",
    "What is the value of {expr}?",
};

Expression random_sum_tree(GenContext& ctx, const std::vector<Expression>& leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return leaves[lo];
  std::size_t mid = lo + 1 + ctx.choose(hi - lo - 1);
  Expression l = random_sum_tree(ctx, leaves, lo, mid);
  Expression r = random_sum_tree(ctx, leaves, mid, hi);
  return ctx.coin() ? Expression::add(l, r) : Expression::sub(l, r);
}

void gen_add_sub_multiple(GenContext& ctx) {
  unsigned n = static_cast<unsigned>(ctx.extrapolate() ? ctx.choose_range(11, 20) : ctx.choose_range(2, 10));
  double share = ctx.extrapolate() ? 1.5 : std::max(ctx.alpha() / n, 0.5);
  BigInt cap = ctx.extrapolate() ? BigInt(99) : BigInt(0);
  std::vector<Expression> leaves;
  for (unsigned i = 0; i < n; ++i) leaves.push_back(Expression::integer(ctx.sample_symmetric(share, BigInt(1), cap, "term")));
  Expression expr;
  if (ctx.choose(5) < 3) {
    expr = leaves[0];
    for (unsigned i = 1; i < n; ++i) expr = ctx.coin() ? Expression::add(expr, leaves[i]) : Expression::sub(expr, leaves[i]);
  } else {
    expr = random_sum_tree(ctx, leaves, 0, n);
  }
  Rational value = to_polynomial(expr).constant_value();
  Slots s{{"expr", expr.render()}};
  finish(ctx, fill_template(kMultiple[pick_template(ctx, kMultiple)], s), format_number(value), n);
}

std::string solve_expr_rational(std::size_t, const Slots& s, const Environment& env) {
  return format(slot_value(s, "expr", env));
}

// ---- mixed / mul_div_multiple -------------------------------------------

Rational sample_small_answer(GenContext& ctx, double share) {
  if (ctx.choose(4) != 0) return Rational(ctx.sample_symmetric(share, BigInt(5), BigInt(0), "answer"));
  BigInt q = ctx.sample(Interval{BigInt(2), BigInt(9)}, "den");
  BigInt w = symmetric_width_for(share - 0.9);
  if (w < BigInt(5)) w = BigInt(5);
  BigInt p = ctx.sample(CoprimeTo{q, -w, w}, "num");
  return Rational(p, q);
}

void gen_mixed(GenContext& ctx) {
  int ops = static_cast<int>(ctx.extrapolate() ? ctx.choose_range(5, 7) : ctx.choose_range(2, 4));
  Rational answer = sample_small_answer(ctx, ctx.alpha() / 3);
  ArithmeticOptions opt;
  opt.leaf_alpha = std::max(1.0, ctx.alpha() * 2 / 3 / (ops + 1));
  opt.factor_alpha = 1.0;
  Expression e = backward_generate_arithmetic(answer, ops, ctx.rng(), ctx.budget(), opt);
  Slots s{{"expr", e.render(kSpaced)}};
  finish(ctx, fill_template(kMultiple[pick_template(ctx, kMultiple)], s), format(answer), ops + 1);
}

void gen_mul_div_multiple(GenContext& ctx) {
  int terms = static_cast<int>(ctx.extrapolate() ? ctx.choose_range(6, 10) : ctx.choose_range(3, 5));
  Rational answer = sample_small_answer(ctx, std::min(3.0, ctx.alpha() / 3));
  ArithmeticOptions opt;
  opt.add_sub = false;
  opt.factor_alpha = std::max(1.0, (ctx.alpha() - 1.0) / (terms - 1));
  Expression e = backward_generate_arithmetic(answer, terms - 1, ctx.rng(), ctx.budget(), opt);
  Slots s{{"expr", e.render(kSpaced)}};
  finish(ctx, fill_template(kMultiple[pick_template(ctx, kMultiple)], s), format(answer), terms);
}

// ---- mul -------------------------------------------------------------------

const std::vector<std::string> kMul = {
    "Calculate {a} * {b}.",
    "What is {a} times {b}?",
    "Multiply {a} and {b}.",
    "What is the product of {a} and {b}?",
    "Product of {a} and {b}.",
};

void gen_mul(GenContext& ctx) {
  Expression a, b;
  long controlled = 0;
  if (ctx.extrapolate()) {
    unsigned da = static_cast<unsigned>(ctx.choose_range(6, 10));
    unsigned db = static_cast<unsigned>(ctx.choose_range(6, 10));
    a = Expression::integer(signed_value(ctx, sample_digits(ctx, da, "a")));
    b = Expression::integer(signed_value(ctx, sample_digits(ctx, db, "b")));
    controlled = std::max(da, db);
  } else {
    for (Expression* op : {&a, &b}) {
      BigInt u = ctx.sample_symmetric(ctx.alpha() / 2, BigInt(9), BigInt(99999), "operand");
      unsigned scale = ctx.choose(4) == 0 ? static_cast<unsigned>(ctx.choose_range(1, 2)) : 0;
      *op = decimal_operand(u, scale);
      controlled = std::max<long>(controlled, static_cast<long>(u.digit_count()));
    }
  }
  Slots s{{"a", a.render()}, {"b", b.render()}};
  finish(ctx, fill_template(kMul[pick_template(ctx, kMul)], s), format_number(a.value() * b.value()), controlled);
}

std::string solve_mul(std::size_t, const Slots& s, const Environment& env) {
  return format_number(slot_value(s, "a", env) * slot_value(s, "b", env));
}

// ---- div -------------------------------------------------------------------

const std::vector<std::string> kDiv = {
    "Divide {a} by {b}.",
    "What is {a} divided by {b}?",
    "Calculate {a} divided by {b}.",
    "Evaluate {a}/{b}.",
};

void gen_div(GenContext& ctx) {
  BigInt p, q, k;
  long controlled;
  if (ctx.extrapolate()) {
    q = ctx.sample_positive(1.5, BigInt(1), BigInt(0), "q");
    p = signed_value(ctx, ctx.sample(CoprimeTo{q, BigInt(1), BigInt(99)}, "p"));
    unsigned d = static_cast<unsigned>(ctx.choose_range(11, 20));
    k = signed_value(ctx, sample_digits(ctx, d, "k"));
  } else {
    q = ctx.sample_positive(ctx.alpha() / 4, BigInt(1), BigInt(0), "q");
    BigInt w = symmetric_width_for(ctx.alpha() / 4);
    p = ctx.sample(CoprimeTo{q, -w, w}, "p");
    k = ctx.sample_nonzero(ctx.alpha() / 2, BigInt(1), BigInt(0), "k");
  }
  BigInt a = p * k, b = q * k;
  std::size_t da = a.digit_count(), db = b.digit_count();
  if (ctx.extrapolate()) {
    controlled = static_cast<long>(std::min(da, db));
  } else {
    controlled = static_cast<long>(std::max(da, db));
    if (controlled > 10) throw RetrySignal("division operands too long");
  }
  Slots s{{"a", a.to_string()}, {"b", b.to_string()}};
  finish(ctx, fill_template(kDiv[pick_template(ctx, kDiv)], s), format(Rational(a, b)), controlled);
}

std::string solve_div(std::size_t, const Slots& s, const Environment& env) {
  Rational b = slot_value(s, "b", env);
  if (b.is_zero()) throw InvalidInput("division by zero");
  return format(slot_value(s, "a", env) / b);
}

// ---- nearest_integer_root ----------------------------------------------

const std::vector<std::string> kRoot = {
    "What is the square root of {n} to the nearest integer?",
    "What is the cube root of {n} to the nearest integer?",
    "What is {n} to the power of 1/{k}, to the nearest integer?",
};

void gen_root(GenContext& ctx) {
  BigInt n = ctx.sample_positive(ctx.alpha(), BigInt(10), BigInt(0), "n");
  std::size_t t = pick_template(ctx, kRoot);
  unsigned k = t == 0 ? 2 : t == 1 ? 3 : static_cast<unsigned>(ctx.choose_range(2, 6));
  ValueSlot v = describe_value(ctx, n, ctx.depth());
  Slots s{{"n", v.text()}, {"k", std::to_string(k)}};
  finish(ctx, fill_template(kRoot[t], s), nearest_integer_root(n, k).to_string());
}

std::string solve_root(std::size_t t, const Slots& s, const Environment& env) {
  Rational n = slot_value(s, "n", env);
  if (!n.is_integer() || n.sign() < 0) throw InvalidInput("root of a non-natural number");
  unsigned k = t == 0 ? 2 : t == 1 ? 3 : static_cast<unsigned>(std::stoul(s.at("k")));
  if (k < 2) throw InvalidInput("root degree below 2");
  return nearest_integer_root(n.num(), k).to_string();
}

// ---- simplify_surd ---------------------------------------------------------

const std::vector<std::string> kSurd = {
    "Simplify {expr}.",
    "What is {expr} in its simplest form?",
};

void gen_surd(GenContext& ctx) {
  static const std::vector<long> radicands = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19};
  BigInt r(radicands[draw_from_set(ctx.rng(), ctx.budget(), radicands.size(), "radicand")]);
  int terms = static_cast<int>(ctx.choose_range(1, 3));
  double share = std::max(0.5, (ctx.alpha() - 1.0) / terms);
  auto surd_leaf = [&](double a) {
    BigInt sq = ctx.sample_positive(a, BigInt(2), BigInt(0), "square");
    return Expression::sqrt(Expression::integer(r * sq * sq));
  };
  Expression e;
  for (int i = 0; i < terms; ++i) {
    Expression leaf = surd_leaf(share * 0.6);
    if (ctx.coin()) {
      BigInt c = ctx.sample_nonzero(share * 0.4, BigInt(2), BigInt(0), "coeff");
      leaf = ctx.coin() ? Expression::mul(Expression::integer(c), leaf) : Expression::mul(leaf, Expression::integer(c));
    }
    if (i == 0) {
      e = leaf;
    } else {
      e = ctx.coin() ? Expression::add(e, leaf) : Expression::sub(e, leaf);
    }
  }
  switch (ctx.choose(5)) {
    case 0:
      e = Expression::mul(e, Expression::integer(ctx.sample_nonzero(1.0, BigInt(2), BigInt(0), "scale")));
      break;
    case 1:
      e = Expression::div(e, Expression::sqrt(Expression::integer(r)));
      break;
    case 2:
      e = Expression::pow(e, Expression::integer(BigInt(2)));
      break;
    default:
      break;
  }
  Surd v = simplify_surd(e);
  if (v.coefficient.is_zero()) throw RetrySignal("surd cancelled");
  Slots s{{"expr", e.render()}};
  finish(ctx, fill_template(kSurd[pick_template(ctx, kSurd)], s), format(v));
}

std::string solve_surd(std::size_t, const Slots& s, const Environment&) {
  return format(simplify_surd(parse_expression(s.at("expr"))));
}

}  // namespace

void register_arithmetic(Catalog& c) {
  const auto T = ModuleGroup::Train;
  const auto X = ModuleGroup::Extrapolate;
  using K = EntityKind;

  auto add = [&](ModuleSpec sp, Module::Generate g, Module::Solve s) { c.add(Module(std::move(sp), g, s)); };

  {
    auto s = spec("arithmetic", "add_or_sub", T, kAddSub);
    s.inputs = {K::Decimal, K::Decimal};
    s.output = K::Decimal;
    s.controlled = "operand_digits";
    s.train_max = 10;
    add(s, gen_add_or_sub, solve_add_or_sub);
    auto x = spec("arithmetic", "add_or_sub_big", X, kAddSub);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = K::Integer;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_add_or_sub, solve_add_or_sub);
  }
  {
    auto s = spec("arithmetic", "add_or_sub_in_base", T, kInBase);
    s.inputs = {K::Integer, K::Integer};
    s.output = K::Text;
    add(s, gen_in_base, solve_in_base);
  }
  {
    auto s = spec("arithmetic", "add_sub_multiple", T, kMultiple);
    s.inputs = {K::Integer};
    s.controlled = "term_count";
    s.train_max = 10;
    add(s, gen_add_sub_multiple, solve_expr_rational);
    auto x = spec("arithmetic", "add_sub_multiple_longer", X, kMultiple);
    x.base = s.id;
    x.inputs = s.inputs;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_add_sub_multiple, solve_expr_rational);
  }
  {
    auto s = spec("arithmetic", "mixed", T, kMultiple);
    s.inputs = {K::Integer};
    s.output = K::Rational;
    s.controlled = "term_count";
    s.train_max = 5;
    add(s, gen_mixed, solve_expr_rational);
    auto x = spec("arithmetic", "mixed_longer", X, kMultiple);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = s.output;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_mixed, solve_expr_rational);
  }
  {
    auto s = spec("arithmetic", "mul", T, kMul);
    s.inputs = {K::Decimal, K::Decimal};
    s.output = K::Decimal;
    s.controlled = "operand_digits";
    s.train_max = 5;
    add(s, gen_mul, solve_mul);
    auto x = spec("arithmetic", "mul_big", X, kMul);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = K::Integer;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_mul, solve_mul);
  }
  {
    auto s = spec("arithmetic", "div", T, kDiv);
    s.inputs = {K::Integer, K::Integer};
    s.output = K::Rational;
    s.controlled = "operand_digits";
    s.train_max = 10;
    add(s, gen_div, solve_div);
    auto x = spec("arithmetic", "div_big", X, kDiv);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = s.output;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_div, solve_div);
  }
  {
    auto s = spec("arithmetic", "mul_div_multiple", T, kMultiple);
    s.inputs = {K::Integer};
    s.output = K::Rational;
    s.controlled = "term_count";
    s.train_max = 5;
    add(s, gen_mul_div_multiple, solve_expr_rational);
    auto x = spec("arithmetic", "mul_div_multiple_longer", X, kMultiple);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = s.output;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_mul_div_multiple, solve_expr_rational);
  }
  {
    auto s = spec("arithmetic", "nearest_integer_root", T, kRoot);
    s.inputs = {K::Integer};
    s.composable = true;
    add(s, gen_root, solve_root);
  }
  {
    auto s = spec("arithmetic", "simplify_surd", T, kSurd);
    s.inputs = {K::Integer};
    s.output = K::Text;
    add(s, gen_surd, solve_surd);
  }
}

}  // namespace mathgen::modules
