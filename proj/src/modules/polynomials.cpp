#include "common.hpp"

#include <algorithm>

#include "mathgen/generators.hpp"
#include "registry.hpp"

namespace mathgen::modules {

namespace {

Polynomial over(const FunctionSlot& f, char v) { return f.def.body.substitute(f.def.param, Polynomial::var(v)); }

BigInt coeff(GenContext& ctx, double share) {
  BigInt w = symmetric_width_for(share);
  if (w < BigInt(2)) w = BigInt(2);
  return ctx.sample(Nonzero{-w, w}, "coeff");
}

// a*v + b
Expression linear_expr(const BigInt& a, const BigInt& b, char v) {
  return signed_sum({scaled(a, Expression::variable(v)), Expression::integer(b)});
}

Expression power_term(const BigInt& k, char v, unsigned power) {
  if (power == 0) return Expression::integer(k);
  return scaled(k, power_expression(v, Rational(static_cast<long>(power))));
}

// ---- add -------------------------------------------------------------------

const std::vector<std::string> kAdd = {
    "Calculate {expr}.",
    "Determine {expr}.",
    "What is {expr}?",
    "Give {expr}.",
};

void gen_add(GenContext& ctx) {
  auto depths = spread_depth(ctx, 2);
  double share = ctx.alpha();
  FunctionSlot f = define_function(ctx, depths[0], 3, share * 0.4);
  FunctionSlot g = define_function(ctx, depths[1], 3, share * 0.4);
  BigInt k1 = coeff(ctx, share * 0.1);
  BigInt k2 = coeff(ctx, share * 0.1);
  char v = ctx.fresh_letter();
  Expression vx = Expression::variable(v);
  Expression expr = signed_sum({scaled(k1, call_of(f, vx)), scaled(k2, call_of(g, vx))});
  Polynomial sum = Polynomial(Rational(k1)) * over(f, v) + Polynomial(Rational(k2)) * over(g, v);
  if (sum.is_zero()) throw RetrySignal("sum cancelled");
  Slots s{{"expr", expr.render()}};
  finish(ctx, fill_template(kAdd[pick_template(ctx, kAdd)], s), format(sum));
}

std::string solve_expr(std::size_t, const Slots& s, const Environment& env) {
  return format(eval_polynomial(s.at("expr"), env));
}

// ---- collect ---------------------------------------------------------------

const std::vector<std::string> kCollect = {
    "Collect the terms in {expr}.",
    "Simplify {expr}.",
};

void gen_collect(GenContext& ctx) {
  char v = ctx.fresh_letter();
  std::vector<unsigned> powers;
  unsigned p1 = static_cast<unsigned>(ctx.choose_range(0, 3));
  powers.push_back(p1);
  if (ctx.coin()) {
    unsigned p2 = static_cast<unsigned>(ctx.choose_range(0, 3));
    if (p2 != p1) powers.push_back(p2);
  }
  struct Term {
    unsigned power;
    BigInt k;
  };
  std::vector<Term> terms;
  std::size_t count = 0;
  std::vector<std::size_t> per;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    per.push_back(static_cast<std::size_t>(ctx.choose_range(2, 3)));
    count += per.back();
  }
  double share = ctx.alpha() / static_cast<double>(count);
  for (std::size_t i = 0; i < powers.size(); ++i) {
    for (std::size_t j = 0; j < per[i]; ++j) terms.push_back({powers[i], coeff(ctx, share)});
  }
  ctx.rng().shuffle(terms);
  std::vector<Expression> parts;
  for (const auto& t : terms) parts.push_back(power_term(t.k, v, t.power));
  Expression expr = signed_sum(parts);
  Polynomial p = collect_terms(expr);
  if (p.is_zero()) throw RetrySignal("terms cancel");
  Slots s{{"expr", expr.render()}};
  finish(ctx, fill_template(kCollect[pick_template(ctx, kCollect)], s), format(p));
}

std::string solve_collect(std::size_t, const Slots& s, const Environment&) {
  return format(collect_terms(parse_expression(s.at("expr"))));
}

// ---- compose ---------------------------------------------------------------

const std::vector<std::string> kCompose = {
    "What is {expr}?",
    "Calculate {expr}.",
    "Give {expr}.",
};

void gen_compose(GenContext& ctx) {
  auto depths = spread_depth(ctx, 2);
  FunctionSlot inner = define_function(ctx, depths[0], 1, ctx.alpha() / 2);
  FunctionSlot outer = define_function(ctx, depths[1], 2, ctx.alpha() / 2);
  char v = ctx.fresh_letter();
  Expression expr = call_of(outer, call_of(inner, Expression::variable(v)));
  Polynomial p = outer.def.body.substitute(outer.def.param, over(inner, v));
  Slots s{{"expr", expr.render()}};
  finish(ctx, fill_template(kCompose[pick_template(ctx, kCompose)], s), format(p));
}

// ---- coefficient_named -----------------------------------------------------

const std::vector<std::string> kNamed = {
    "Rearrange {expr} to the form {form} and give {letter}.",
    "Express {expr} as {form} and give {letter}.",
    "Rewrite {expr} in the form {form} and give {letter}.",
};

NamedForm parse_form(const std::string& text) {
  NamedForm form;
  bool have_var = false;
  std::size_t start = 0;
  while (true) {
    auto p = text.find(" + ", start);
    std::string term = text.substr(start, p == std::string::npos ? std::string::npos : p - start);
    if (term.empty() || term[0] < 'a' || term[0] > 'z') throw ParseError("bad form term '" + term + "'");
    unsigned power = 0;
    if (term.size() > 1) {
      if (term.size() < 3 || term[1] != '*') throw ParseError("bad form term '" + term + "'");
      char v = term[2];
      if (have_var && v != form.var) throw ParseError("form mixes variables");
      form.var = v;
      have_var = true;
      power = 1;
      if (term.size() > 3) {
        if (term.compare(3, 2, "**") != 0) throw ParseError("bad form term '" + term + "'");
        power = static_cast<unsigned>(std::stoul(term.substr(5)));
      }
    }
    form.terms.emplace_back(term[0], power);
    if (p == std::string::npos) break;
    start = p + 3;
  }
  if (!have_var) throw ParseError("form has no variable");
  return form;
}

void gen_named(GenContext& ctx) {
  char v = ctx.fresh_letter();
  std::size_t shape = ctx.choose(3);
  double share = ctx.alpha() / (shape == 1 ? 5.0 : (shape == 2 ? 3.0 : 4.0));
  Expression expr;
  Polynomial p;
  Polynomial x = Polynomial::var(v);
  auto lin = [&](const BigInt& a, const BigInt& b) { return Polynomial(Rational(a)) * x + Polynomial(Rational(b)); };
  if (shape == 0) {
    BigInt a = coeff(ctx, share), b = coeff(ctx, share), c = coeff(ctx, share), d = coeff(ctx, share);
    expr = Expression::mul(linear_expr(a, b, v), linear_expr(c, d, v));
    p = lin(a, b) * lin(c, d);
  } else if (shape == 1) {
    BigInt a = coeff(ctx, share), b = coeff(ctx, share);
    BigInt c = coeff(ctx, share), d = coeff(ctx, share), e = coeff(ctx, share);
    Expression quad = signed_sum({power_term(c, v, 2), power_term(d, v, 1), Expression::integer(e)});
    expr = Expression::mul(linear_expr(a, b, v), quad);
    p = lin(a, b) * (Polynomial(Rational(c)) * x * x + lin(d, e));
  } else {
    BigInt k = coeff(ctx, share), a = coeff(ctx, share), b = coeff(ctx, share);
    expr = scaled(k, Expression::pow(linear_expr(a, b, v), Expression::integer(BigInt(2))));
    p = Polynomial(Rational(k)) * lin(a, b) * lin(a, b);
  }
  NamedForm form;
  form.var = v;
  unsigned top = p.degree(v);
  for (unsigned power = 0; power <= top; ++power) form.terms.emplace_back(ctx.fresh_letter(), power);
  ctx.rng().shuffle(form.terms);
  char letter = form.terms[ctx.choose(form.terms.size())].first;
  Slots s{{"expr", expr.render()}, {"form", form.render()}, {"letter", std::string(1, letter)}};
  finish(ctx, fill_template(kNamed[pick_template(ctx, kNamed)], s), format(coefficient_named(p, form, letter)));
}

std::string solve_named(std::size_t, const Slots& s, const Environment& env) {
  NamedForm form = parse_form(s.at("form"));
  const std::string& letter = s.at("letter");
  if (letter.size() != 1) throw ParseError("bad letter");
  return format(coefficient_named(eval_polynomial(s.at("expr"), env), form, letter[0]));
}

// ---- evaluate --------------------------------------------------------------

const std::vector<std::string> kEvaluate = {
    "What is {call}?",
    "Calculate {call}.",
    "Give {call}.",
    "Determine {call}.",
};

void gen_evaluate(GenContext& ctx) {
  auto depths = spread_depth(ctx, 2);
  FunctionSlot f = define_function(ctx, depths[0], 3, ctx.alpha() * 2 / 3);
  BigInt k = ctx.sample_symmetric(ctx.alpha() / 3, BigInt(3), BigInt(0), "argument");
  ValueSlot arg = describe_value(ctx, k, depths[1]);
  Expression call = call_of(f, arg.expr);
  Rational value = f.def.body.evaluate({{f.def.param, Rational(k)}});
  Slots s{{"call", call.render()}};
  finish(ctx, fill_template(kEvaluate[pick_template(ctx, kEvaluate)], s), format(value));
}

std::string solve_evaluate(std::size_t, const Slots& s, const Environment& env) {
  Expression e = parse_expression(s.at("call"));
  if (e.kind() != ExprKind::Call) throw InvalidInput("expected a function call");
  return format(eval_constant(s.at("call"), env));
}

// ---- expand ----------------------------------------------------------------

const std::vector<std::string> kExpand = {
    "Expand {expr}.",
    "Expand and simplify {expr}.",
    "Multiply out {expr}.",
};

void gen_expand(GenContext& ctx) {
  char v = ctx.fresh_letter();
  Polynomial x = Polynomial::var(v);
  auto lin = [&](const BigInt& a, const BigInt& b) { return Polynomial(Rational(a)) * x + Polynomial(Rational(b)); };
  std::size_t shape = ctx.choose(4);
  Expression expr;
  Polynomial p;
  if (shape == 0) {
    double share = ctx.alpha() / 4;
    BigInt a = coeff(ctx, share), b = coeff(ctx, share), c = coeff(ctx, share), d = coeff(ctx, share);
    expr = Expression::mul(linear_expr(a, b, v), linear_expr(c, d, v));
    p = lin(a, b) * lin(c, d);
  } else if (shape == 1) {
    double share = ctx.alpha() / 6;
    BigInt a = coeff(ctx, share), b = coeff(ctx, share), c = coeff(ctx, share);
    BigInt d = coeff(ctx, share), f = coeff(ctx, share), g = coeff(ctx, share);
    expr = Expression::mul(Expression::mul(linear_expr(a, b, v), linear_expr(c, d, v)), linear_expr(f, g, v));
    p = lin(a, b) * lin(c, d) * lin(f, g);
  } else if (shape == 2) {
    double share = ctx.alpha() / 6;
    BigInt k1 = coeff(ctx, share), a = coeff(ctx, share), b = coeff(ctx, share);
    BigInt k2 = coeff(ctx, share), c = coeff(ctx, share), d = coeff(ctx, share);
    expr = signed_sum({scaled(k1, linear_expr(a, b, v)), scaled(k2, linear_expr(c, d, v))});
    p = Polynomial(Rational(k1)) * lin(a, b) + Polynomial(Rational(k2)) * lin(c, d);
  } else {
    double share = ctx.alpha() / 4;
    BigInt a = coeff(ctx, share), b = coeff(ctx, share), c = coeff(ctx, share), d = coeff(ctx, share);
    Expression sq = signed_sum({power_term(a, v, 2), Expression::integer(b)});
    expr = Expression::mul(sq, linear_expr(c, d, v));
    p = (Polynomial(Rational(a)) * x * x + Polynomial(Rational(b))) * lin(c, d);
  }
  if (p.is_zero()) throw RetrySignal("expansion cancelled");
  Slots s{{"expr", expr.render()}};
  finish(ctx, fill_template(kExpand[pick_template(ctx, kExpand)], s), format(p));
}

std::string solve_expand(std::size_t, const Slots& s, const Environment& env) {
  return format(eval_polynomial(s.at("expr"), env));
}

// ---- simplify_power --------------------------------------------------------

const std::vector<std::string> kSimplifyPower = {
    "Simplify {expr} assuming {var} is positive.",
    "Assuming {var} is positive, simplify {expr}.",
};

Expression power_leaf(GenContext& ctx, char v, double share) {
  BigInt p = coeff(ctx, share);
  if (ctx.choose(4) == 0) {
    // Denominator is a free choice, as for fractions elsewhere.
    long q = ctx.choose_range(2, 5);
    return power_expression(v, Rational(p, BigInt(q)));
  }
  return power_expression(v, Rational(p));
}

void gen_simplify_power(GenContext& ctx) {
  char v = ctx.fresh_letter();
  long n = ctx.choose_range(2, 4);
  bool outer = ctx.coin();
  double share = ctx.alpha() / static_cast<double>(n + (outer ? 1 : 0));
  std::vector<Expression> leaves;
  for (long i = 0; i < n; ++i) leaves.push_back(power_leaf(ctx, v, share));
  // Random binary tree over the leaves, left to right.
  while (leaves.size() > 1) {
    std::size_t i = ctx.choose(leaves.size() - 1);
    Expression joined = ctx.coin() ? Expression::mul(leaves[i], leaves[i + 1]) : Expression::div(leaves[i], leaves[i + 1]);
    leaves[i] = joined;
    leaves.erase(leaves.begin() + static_cast<long>(i) + 1);
  }
  Expression expr = leaves[0];
  if (outer) {
    BigInt m = ctx.sample(Nonzero{BigInt(-4), BigInt(4)}, "outer_power");
    expr = Expression::pow(expr, Expression::integer(m));
  }
  Slots s{{"expr", expr.render()}, {"var", std::string(1, v)}};
  finish(ctx, fill_template(kSimplifyPower[pick_template(ctx, kSimplifyPower)], s),
         simplify_power(expr, v).render());
}

std::string solve_simplify_power(std::size_t, const Slots& s, const Environment&) {
  const std::string& v = s.at("var");
  if (v.size() != 1) throw ParseError("bad variable");
  return simplify_power(parse_expression(s.at("expr")), v[0]).render();
}

}  // namespace

void register_polynomials(Catalog& c) {
  const auto T = ModuleGroup::Train;
  using K = EntityKind;
  auto add = [&](ModuleSpec sp, Module::Generate g, Module::Solve s) { c.add(Module(std::move(sp), g, s)); };

  {
    auto s = spec("polynomials", "add", T, kAdd);
    s.inputs = {K::Function, K::Function};
    s.output = K::Function;
    s.composable = true;
    add(s, gen_add, solve_expr);
  }
  {
    auto s = spec("polynomials", "coefficient_named", T, kNamed);
    s.inputs = {K::Function};
    s.output = K::Integer;
    add(s, gen_named, solve_named);
  }
  {
    auto s = spec("polynomials", "collect", T, kCollect);
    s.inputs = {K::Function};
    s.output = K::Function;
    add(s, gen_collect, solve_collect);
  }
  {
    auto s = spec("polynomials", "compose", T, kCompose);
    s.inputs = {K::Function, K::Function};
    s.output = K::Function;
    s.composable = true;
    add(s, gen_compose, solve_expr);
  }
  {
    auto s = spec("polynomials", "evaluate", T, kEvaluate);
    s.inputs = {K::Function, K::Integer};
    s.composable = true;
    add(s, gen_evaluate, solve_evaluate);
  }
  {
    auto s = spec("polynomials", "expand", T, kExpand);
    s.inputs = {K::Function};
    s.output = K::Function;
    add(s, gen_expand, solve_expand);
  }
  {
    auto s = spec("polynomials", "simplify_power", T, kSimplifyPower);
    s.inputs = {K::Function};
    s.output = K::Function;
    add(s, gen_simplify_power, solve_simplify_power);
  }
}

}  // namespace mathgen::modules
