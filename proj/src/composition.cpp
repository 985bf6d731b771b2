#include "mathgen/composition.hpp"

#include "mathgen/errors.hpp"
#include "mathgen/generators.hpp"

namespace mathgen {

namespace {

int add_node(GenContext& ctx, std::string producer, EntityKind kind, std::string name, std::string clause,
             std::vector<int> inputs = {}) {
  auto& nodes = ctx.plan().nodes;
  nodes.push_back({std::move(producer), kind, std::move(name), std::move(clause), {}});
  for (int i : inputs) {
    if (i >= 0) nodes.back().inputs.push_back(i);
  }
  return static_cast<int>(nodes.size()) - 1;
}

BigInt small_nonzero(GenContext& ctx, double alpha, const char* label) {
  BigInt w = symmetric_width_for(alpha);
  if (w < BigInt(2)) w = BigInt(2);
  return ctx.sample(Nonzero{-w, w}, label);
}

Expression scaled(const BigInt& k, Expression e) {
  if (k == BigInt(1)) return e;
  if (k == BigInt(-1)) return Expression::neg(e);
  return Expression::mul(Expression::integer(k), e);
}

std::string name_of(char c) { return std::string(1, c); }

std::string function_head(char f, char p) { return std::string{f, '(', p, ')'}; }

// ---- value producers -------------------------------------------------------

ValueSlot value_let(GenContext& ctx, const BigInt& v, int depth, double share) {
  Expression expr;
  std::vector<int> inputs;
  if (depth > 1) {
    BigInt r = ctx.sample_symmetric(1.0, BigInt(2), BigInt(0), "aux");
    ValueSlot inner = describe_value(ctx, r, depth - 1, share / 2);
    inputs.push_back(inner.node);
    bool sub = ctx.coin();
    Rational left = sub ? Rational(v + r) : Rational(v - r);
    Expression le = ctx.coin() ? Expression::integer(left.num())
                               : backward_generate_arithmetic(left, 1, ctx.rng(), ctx.budget(), {true, true, share / 2, 0.7});
    expr = sub ? Expression::sub(le, inner.expr) : Expression::add(le, inner.expr);
  } else {
    int ops = static_cast<int>(ctx.choose_range(1, 2));
    expr = backward_generate_arithmetic(Rational(v), ops, ctx.rng(), ctx.budget(), {true, true, share / ops, 0.7});
  }
  char n = ctx.fresh_letter();
  std::string verb = ctx.coin() ? " = " : " be ";
  int node = add_node(ctx, "value_let", EntityKind::Integer, name_of(n), "Let " + name_of(n) + verb + expr.render() + ".",
                      inputs);
  return {Expression::variable(n), node};
}

ValueSlot function_eval(GenContext& ctx, const BigInt& v, int depth, double share) {
  char f = ctx.fresh_letter();
  char p = ctx.fresh_letter();
  // Argument first: literal or a described value.
  BigInt k = ctx.sample_symmetric(1.0, BigInt(3), BigInt(12), "argument");
  ValueSlot arg = depth > 1 ? describe_value(ctx, k, depth - 1, share / 2) : ValueSlot{Expression::integer(k), -1};
  unsigned degree = static_cast<unsigned>(ctx.choose_range(1, 2));
  BigInt w = symmetric_width_for(share / 2);
  if (w < BigInt(2)) w = BigInt(2);
  if (degree == 2 && BigInt(12) < w) w = BigInt(12);
  // Only the non-constant coefficients are drawn; the constant is forced
  // by f(k) = v.
  std::vector<Rational> coeffs{Rational(0)};
  for (unsigned d = 1; d < degree; ++d) coeffs.emplace_back(ctx.sample(Symmetric{w}, "coeff"));
  coeffs.emplace_back(ctx.sample(Nonzero{-w, w}, "lead"));
  Polynomial g = Polynomial::from_coefficients(p, coeffs);
  Rational gk = g.evaluate({{p, Rational(k)}});
  Polynomial body = g + Polynomial(Rational(v) - gk);
  int fnode = add_node(ctx, "function_def", EntityKind::Function, name_of(f),
                       "Let " + function_head(f, p) + " = " + format(body) + ".", {arg.node});
  Expression call = Expression::call(f, arg.expr);
  if (ctx.coin()) return {call, fnode};
  char n = ctx.fresh_letter();
  int node = add_node(ctx, "function_eval", EntityKind::Integer, name_of(n),
                      "Let " + name_of(n) + " be " + call.render() + ".", {fnode});
  return {Expression::variable(n), node};
}

ValueSlot suppose_one(GenContext& ctx, const BigInt& v, int depth, double share) {
  char n = ctx.fresh_letter();
  BigInt a = small_nonzero(ctx, 0.8, "slope");
  BigInt b = ctx.sample_symmetric(share / 2, BigInt(2), BigInt(0), "offset");
  ValueSlot bs = depth > 1 ? describe_value(ctx, b, depth - 1, share / 2) : ValueSlot{Expression::integer(b), -1};
  BigInt c = a * v + b;
  std::vector<Expression> lhs_terms{scaled(a, Expression::variable(n))};
  if (bs.node >= 0 || !b.is_zero()) lhs_terms.push_back(bs.expr);
  Expression lhs = signed_sum(lhs_terms);
  Expression rhs = Expression::integer(c);
  Equation eq = ctx.coin() ? Equation{lhs, rhs} : Equation{rhs, lhs};
  int node = add_node(ctx, "suppose_linear", EntityKind::Integer, name_of(n), "Suppose " + eq.render() + ".", {bs.node});
  return {Expression::variable(n), node};
}

ValueSlot suppose_two(GenContext& ctx, const BigInt& v, double share) {
  char n = ctx.fresh_letter();
  char m = ctx.fresh_letter();
  BigInt other = ctx.sample_symmetric(share / 3, BigInt(2), BigInt(0), "other");
  char x = std::min(n, m), y = std::max(n, m);
  Rational xv = x == n ? Rational(v) : Rational(other);
  Rational yv = x == n ? Rational(other) : Rational(v);
  LinearSystem2 s = backward_generate_linear_2d(xv, yv, x, y, ctx.rng(), ctx.budget(), 0.8);
  Equation e1 = linear_row(s.a, s.b, s.e, x, y);
  Equation e2 = linear_row(s.c, s.d, s.f, x, y);
  int node = add_node(ctx, "suppose_system", EntityKind::Integer, std::string{n, m},
                      "Suppose " + e1.render() + ", " + e2.render() + ".");
  return {Expression::variable(n), node};
}

// ---- function producers ----------------------------------------------------

FunctionSlot direct_function(GenContext& ctx, unsigned max_degree, double share) {
  char f = ctx.fresh_letter();
  char p = ctx.fresh_letter();
  unsigned degree = static_cast<unsigned>(ctx.choose_range(1, std::max<long>(1, max_degree)));
  BigInt w = symmetric_width_for(share / (degree + 1));
  if (w < BigInt(2)) w = BigInt(2);
  Polynomial body = random_polynomial(p, degree, w, ctx.rng(), ctx.budget());
  int node = add_node(ctx, "function_def", EntityKind::Function, name_of(f),
                      "Let " + function_head(f, p) + " = " + format(body) + ".");
  return {{f, p, body}, node};
}

FunctionSlot derivative_function(GenContext& ctx, unsigned max_degree, double share) {
  char f = ctx.fresh_letter();
  char p = ctx.fresh_letter();
  unsigned order = static_cast<unsigned>(ctx.choose_range(1, 2));
  unsigned degree = static_cast<unsigned>(ctx.choose_range(1, std::max<long>(1, max_degree))) + order;
  BigInt w = symmetric_width_for(share / (degree + 1));
  if (w < BigInt(2)) w = BigInt(2);
  // Terms below `order` vanish, so their coefficients are free text and
  // not credited.
  Polynomial shown;
  for (unsigned e = 0; e < order; ++e) {
    shown += Polynomial::term(Rational(ctx.choose_range(-9, 9)), Monomial::var(p, e));
  }
  for (unsigned e = order; e < degree; ++e) {
    shown += Polynomial::term(Rational(ctx.sample(Symmetric{w}, "coeff")), Monomial::var(p, e));
  }
  shown += Polynomial::term(Rational(ctx.sample(Nonzero{-w, w}, "lead")), Monomial::var(p, degree));
  Polynomial body = shown.differentiate(p, order);
  static const char* kOrder[] = {"", "first", "second", "third"};
  int node = add_node(ctx, "function_derivative", EntityKind::Function, name_of(f),
                      "Let " + function_head(f, p) + " be the " + kOrder[order] + " derivative of " + format(shown) + ".");
  return {{f, p, body}, node};
}

}  // namespace

ValueSlot describe_value(GenContext& ctx, const BigInt& v, int depth, double alpha_share) {
  if (depth <= 0) return {Expression::integer(v), -1};
  switch (ctx.choose(4)) {
    case 0:
      return value_let(ctx, v, depth, alpha_share);
    case 1:
      return function_eval(ctx, v, depth, alpha_share);
    case 2:
      return suppose_one(ctx, v, depth, alpha_share);
    default:
      if (depth > 1) return suppose_one(ctx, v, depth, alpha_share);
      return suppose_two(ctx, v, alpha_share);
  }
}

FunctionSlot define_function(GenContext& ctx, int depth, unsigned max_degree, double alpha_share) {
  if (depth <= 0) return direct_function(ctx, max_degree, alpha_share);
  std::size_t pick = ctx.choose(3);
  if (pick == 0) {
    FunctionSlot a = define_function(ctx, depth - 1, max_degree, alpha_share / 2);
    FunctionSlot b = define_function(ctx, 0, max_degree, alpha_share / 2);
    char h = ctx.fresh_letter();
    char p = ctx.fresh_letter();
    BigInt k1 = small_nonzero(ctx, 1.0, "scale");
    BigInt k2 = small_nonzero(ctx, 1.0, "scale");
    Expression pv = Expression::variable(p);
    Expression rhs = signed_sum({scaled(k1, Expression::call(a.def.name, pv)), scaled(k2, Expression::call(b.def.name, pv))});
    Polynomial body = Polynomial(Rational(k1)) * a.def.body.substitute(a.def.param, Polynomial::var(p)) +
                      Polynomial(Rational(k2)) * b.def.body.substitute(b.def.param, Polynomial::var(p));
    if (body.is_zero() || body.is_constant()) throw RetrySignal("linear combination cancelled");
    int node = add_node(ctx, "function_linear_combination", EntityKind::Function, name_of(h),
                        "Let " + function_head(h, p) + " = " + rhs.render() + ".", {a.node, b.node});
    return {{h, p, body}, node};
  }
  if (pick == 1) {
    FunctionSlot inner = define_function(ctx, depth - 1, 1, alpha_share / 2);
    FunctionSlot outer = define_function(ctx, 0, max_degree, alpha_share / 2);
    char w = ctx.fresh_letter();
    char p = ctx.fresh_letter();
    Polynomial g = inner.def.body.substitute(inner.def.param, Polynomial::var(p));
    Polynomial body = outer.def.body.substitute(outer.def.param, g);
    Expression rhs = Expression::call(outer.def.name, Expression::call(inner.def.name, Expression::variable(p)));
    int node = add_node(ctx, "function_compose", EntityKind::Function, name_of(w),
                        "Let " + function_head(w, p) + " = " + rhs.render() + ".", {inner.node, outer.node});
    return {{w, p, body}, node};
  }
  return derivative_function(ctx, max_degree, alpha_share);
}

Expression call_of(const FunctionSlot& f, Expression arg) { return Expression::call(f.def.name, std::move(arg)); }

std::vector<int> spread_depth(GenContext& ctx, int slots) {
  std::vector<int> out(static_cast<std::size_t>(std::max(slots, 0)), 0);
  if (out.empty()) return out;
  for (int d = 0; d < ctx.depth(); ++d) ++out[ctx.choose(out.size())];
  return out;
}

CompositionPlan build_plan(const Module& final_module, RandomStream rng, double alpha, int depth, Split split) {
  GenContext ctx(rng, alpha, split, final_module.spec().group, depth);
  final_module.generate_into(ctx);
  return ctx.plan();
}

std::string solve_plan(const CompositionPlan& plan, const Module& final_module) {
  return solve_with(final_module, phrase_plan(plan));
}

}  // namespace mathgen
