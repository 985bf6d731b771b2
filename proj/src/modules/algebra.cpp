#include "common.hpp"

#include <algorithm>
#include <cmath>

#include "mathgen/generators.hpp"
#include "mathgen/solvers.hpp"
#include "registry.hpp"

namespace mathgen::modules {

namespace {

char var_slot(const Slots& s, const char* name = "var") {
  const std::string& v = s.at(name);
  if (v.size() != 1 || v[0] < 'a' || v[0] > 'z') throw ParseError("bad variable '" + v + "'");
  return v[0];
}

// ---- linear_1d -------------------------------------------------------------

const std::vector<std::string> kLinear1d = {
    "Solve {eq} for {var}.",
    "What is {var} in {eq}?",
    "Find {var} such that {eq}.",
};

void gen_linear_1d(GenContext& ctx) {
  char x = ctx.fresh_letter();
  double a_share = ctx.alpha() / 3;
  BigInt v = ctx.sample_symmetric(ctx.alpha() / 3, BigInt(2), BigInt(0), "solution");
  BigInt a = ctx.sample_nonzero(a_share, BigInt(2), BigInt(0), "coefficient");
  std::size_t form = ctx.choose(3);
  int depth = ctx.depth();
  Expression xv = Expression::variable(x);
  Equation eq;
  if (form == 2) {
    // 0 = a*x + b, b forced.
    BigInt b = -(a * v);
    ValueSlot bs = describe_value(ctx, b, depth);
    std::vector<Expression> rhs{scaled(a, xv)};
    if (!b.is_zero() || bs.node >= 0) rhs.push_back(bs.expr);
    eq = {Expression::integer(BigInt(0)), signed_sum(rhs)};
  } else if (form == 0) {
    BigInt b = ctx.sample_symmetric(ctx.alpha() / 3, BigInt(2), BigInt(0), "offset");
    BigInt c = a * v + b;
    ValueSlot cs = describe_value(ctx, c, depth);
    std::vector<Expression> lhs{scaled(a, xv)};
    if (!b.is_zero()) lhs.push_back(Expression::integer(b));
    eq = {signed_sum(lhs), cs.expr};
  } else {
    // a*x + b = d*x + e
    BigInt b = ctx.sample_symmetric(ctx.alpha() / 3, BigInt(2), BigInt(0), "offset");
    BigInt d = ctx.sample_nonzero(1.0, BigInt(2), BigInt(0), "other_coefficient");
    if (d == a) throw RetrySignal("coefficients cancel");
    BigInt e = (a - d) * v + b;
    ValueSlot bs = describe_value(ctx, b, depth);
    std::vector<Expression> lhs{scaled(a, xv)};
    if (!b.is_zero() || bs.node >= 0) lhs.push_back(bs.expr);
    std::vector<Expression> rhs{scaled(d, xv)};
    if (!e.is_zero()) rhs.push_back(Expression::integer(e));
    eq = {signed_sum(lhs), signed_sum(rhs)};
    if (ctx.coin()) std::swap(eq.lhs, eq.rhs);
  }
  Slots s{{"eq", eq.render()}, {"var", std::string(1, x)}};
  finish(ctx, fill_template(kLinear1d[pick_template(ctx, kLinear1d)], s), v.to_string());
}

std::string solve_linear_1d_q(std::size_t, const Slots& s, const Environment& env) {
  char x = var_slot(s);
  if (env.scope.values.count(x)) throw InvalidInput("unknown is already bound");
  return format(solve_linear_1d(parse_equation(s.at("eq")), x, env.scope));
}

// ---- linear_2d -------------------------------------------------------------

const std::vector<std::string> kLinear2d = {
    "Solve {eq1}, {eq2} for {var}.",
    "Solve {eq1} and {eq2} for {var}.",
    "Find {var} such that {eq1} and {eq2}.",
};

void gen_linear_2d(GenContext& ctx) {
  char x = ctx.fresh_letter();
  char y = ctx.fresh_letter();
  double share = ctx.alpha() / 4;
  BigInt xv = ctx.sample_symmetric(share, BigInt(2), BigInt(0), "x");
  BigInt yv = ctx.sample_symmetric(share, BigInt(2), BigInt(0), "y");
  LinearSystem2 sys = backward_generate_linear_2d(Rational(xv), Rational(yv), x, y, ctx.rng(), ctx.budget(),
                                                  std::max(0.5, ctx.alpha() / 8));
  Equation e1 = linear_row(sys.a, sys.b, sys.e, x, y);
  Equation e2 = linear_row(sys.c, sys.d, sys.f, x, y);
  bool first = ctx.coin();
  Slots s{{"eq1", e1.render()}, {"eq2", e2.render()}, {"var", std::string(1, first ? x : y)}};
  finish(ctx, fill_template(kLinear2d[pick_template(ctx, kLinear2d)], s), (first ? xv : yv).to_string());
}

std::string solve_linear_2d_q(std::size_t, const Slots& s, const Environment& env) {
  char target = var_slot(s);
  Equation e1 = parse_equation(s.at("eq1"));
  Equation e2 = parse_equation(s.at("eq2"));
  std::vector<char> vars;
  for (const Equation* e : {&e1, &e2}) {
    for (const Expression* side : {&e->lhs, &e->rhs}) {
      for (char v : side->variables()) {
        if (!env.scope.values.count(v) && std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      }
    }
  }
  if (vars.size() != 2 || std::find(vars.begin(), vars.end(), target) == vars.end()) {
    throw InvalidInput("expected a system in two unknowns including " + std::string(1, target));
  }
  char other = vars[0] == target ? vars[1] : vars[0];
  LinearSystem2 sys = linear_system_from(e1, e2, target, other, env.scope);
  return format(solve_linear_2d(sys, target));
}

// ---- polynomial_roots ------------------------------------------------------

const std::vector<std::string> kRoots = {
    "Solve {poly} = 0 for {var}.",
    "Find {var} such that {poly} = 0.",
    "Determine {var} so that {poly} = 0.",
    "Factor {poly}.",
};

double log10_factorial(unsigned n) { return std::lgamma(n + 1.0) / std::log(10.0); }

void gen_roots(GenContext& ctx) {
  bool big = ctx.extrapolate();
  std::size_t t = big ? ctx.choose(3) : pick_template(ctx, kRoots);
  unsigned degree = big ? static_cast<unsigned>(ctx.choose_range(4, 5))
                        : (t == 3 ? 2u : static_cast<unsigned>(ctx.choose_range(2, 3)));
  char x = ctx.fresh_letter();
  BigInt k = ctx.sample(Nonzero{BigInt(-4), BigInt(4)}, "content");
  // Roots are an unordered multiset: a^d ordered draws cover each multiset
  // at most d! times, so the multiset carries floor(a^d / d!).
  double need = std::max(0.0, ctx.alpha() - ctx.budget().credit()) + log10_factorial(degree);
  BigInt a = set_size_for(need / degree);
  if (a < BigInt(3)) a = BigInt(3);
  if (a.is_even()) a += BigInt(1);
  BigInt w = (a - BigInt(1)) / BigInt(2);
  Polynomial p{Rational(k)};
  for (unsigned i = 0; i < degree; ++i) {
    BigInt r = ctx.rng().range(-w, w);
    p = p * (Polynomial::var(x) - Polynomial(Rational(r)));
  }
  BigInt fact(1);
  for (unsigned i = 2; i <= degree; ++i) fact *= BigInt(i);
  ctx.budget().record(a.pow(degree) / fact, "root_multiset");
  Slots s{{"poly", format(p)}, {"var", std::string(1, x)}};
  std::string answer = t == 3 ? format_factorization(p, x) : format_roots(poly_roots(p, x));
  finish(ctx, fill_template(kRoots[t], s), answer, static_cast<long>(degree));
}

char single_variable(const Polynomial& p) {
  auto vars = p.variables();
  if (vars.size() != 1) throw InvalidInput("expected a polynomial in one variable");
  return vars[0];
}

std::string solve_roots(std::size_t t, const Slots& s, const Environment& env) {
  Polynomial p = eval_polynomial(s.at("poly"), env);
  if (t == 3) return format_factorization(p, single_variable(p));
  char x = var_slot(s);
  if (single_variable(p) != x) throw InvalidInput("polynomial is not in the named variable");
  return format_roots(poly_roots(p, x));
}

// ---- sequences -------------------------------------------------------------

const std::vector<std::string> kNext = {
    "What is next in {seq}?",
    "What comes next: {seq}?",
    "What is the next term in {seq}?",
};

const std::vector<std::string> kNth = {
    "What is the {var}'th term of {seq}?",
    "What is the {var}th term of {seq}?",
};

std::vector<BigInt> sample_sequence(GenContext& ctx, char var, SequenceSpec& out) {
  unsigned degree = static_cast<unsigned>(ctx.choose_range(1, 3));
  BigInt w = symmetric_width_for(ctx.alpha() / (degree + 1));
  if (w < BigInt(2)) w = BigInt(2);
  std::vector<Rational> coeffs;
  for (unsigned d = 0; d < degree; ++d) coeffs.emplace_back(ctx.sample(Symmetric{w}, "coeff"));
  coeffs.emplace_back(ctx.sample(Nonzero{-w, w}, "lead"));
  out.generator = Polynomial::from_coefficients(var, coeffs);
  out.var = var;
  out.shown = degree + 2 + ctx.choose(2);
  std::vector<BigInt> terms;
  for (std::size_t i = 1; i <= out.shown; ++i) terms.push_back(out.term(static_cast<long>(i)));
  return terms;
}

std::string render_terms(const std::vector<BigInt>& terms) {
  std::vector<std::string> parts;
  for (const auto& t : terms) parts.push_back(t.to_string());
  return format_list(parts);
}

std::vector<BigInt> parse_terms(const std::string& text) {
  std::vector<BigInt> out;
  for (const auto& item : split_list(text)) out.push_back(BigInt::parse(item));
  if (out.size() < 3) throw InvalidInput("too few terms");
  return out;
}

void gen_next(GenContext& ctx) {
  SequenceSpec spec;
  auto terms = sample_sequence(ctx, 'n', spec);
  Slots s{{"seq", render_terms(terms)}};
  finish(ctx, fill_template(kNext[pick_template(ctx, kNext)], s), spec.next_term().to_string());
}

std::string solve_next(std::size_t, const Slots& s, const Environment&) {
  return fit_sequence(parse_terms(s.at("seq"))).next_term().to_string();
}

void gen_nth(GenContext& ctx) {
  char v = ctx.fresh_letter();
  SequenceSpec spec;
  auto terms = sample_sequence(ctx, v, spec);
  Slots s{{"seq", render_terms(terms)}, {"var", std::string(1, v)}};
  finish(ctx, fill_template(kNth[pick_template(ctx, kNth)], s), format(spec.generator));
}

std::string solve_nth(std::size_t, const Slots& s, const Environment&) {
  return format(fit_sequence(parse_terms(s.at("seq")), var_slot(s)).generator);
}

}  // namespace

void register_algebra(Catalog& c) {
  const auto T = ModuleGroup::Train;
  const auto X = ModuleGroup::Extrapolate;
  using K = EntityKind;
  auto add = [&](ModuleSpec sp, Module::Generate g, Module::Solve s) { c.add(Module(std::move(sp), g, s)); };

  {
    auto s = spec("algebra", "linear_1d", T, kLinear1d);
    s.inputs = {K::Integer};
    s.composable = true;
    add(s, gen_linear_1d, solve_linear_1d_q);
  }
  {
    auto s = spec("algebra", "linear_2d", T, kLinear2d);
    s.inputs = {K::Integer, K::Integer};
    add(s, gen_linear_2d, solve_linear_2d_q);
  }
  {
    auto s = spec("algebra", "polynomial_roots", T, kRoots);
    s.inputs = {K::Function};
    s.output = K::Text;
    s.controlled = "degree";
    s.train_max = 3;
    add(s, gen_roots, solve_roots);
    auto x = spec("algebra", "polynomial_roots_big", X, kRoots);
    x.base = s.id;
    x.inputs = s.inputs;
    x.output = s.output;
    x.controlled = s.controlled;
    x.train_max = s.train_max;
    add(x, gen_roots, solve_roots);
  }
  {
    auto s = spec("algebra", "sequence_next_term", T, kNext);
    s.inputs = {K::Integer};
    add(s, gen_next, solve_next);
  }
  {
    auto s = spec("algebra", "sequence_nth_term", T, kNth);
    s.inputs = {K::Integer};
    s.output = K::Function;
    add(s, gen_nth, solve_nth);
  }
}

}  // namespace mathgen::modules
