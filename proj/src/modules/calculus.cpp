#include "common.hpp"

#include <algorithm>
#include <set>

#include "mathgen/generators.hpp"
#include "registry.hpp"

namespace mathgen::modules {

namespace {

const std::vector<std::string> kDifferentiate = {
    "What is the derivative of {f}?",
    "Differentiate {f} with respect to {v}.",
    "What is the {ord} derivative of {f} wrt {v}?",
    "Find the {ord} derivative of {f} wrt {v}.",
};

const char* const kOrders[] = {"", "first", "second", "third"};

unsigned order_of(const std::string& w) {
  for (unsigned i = 1; i <= 3; ++i) {
    if (w == kOrders[i]) return i;
  }
  throw ParseError("unknown derivative order '" + w + "'");
}

// A polynomial in one or two variables, all coefficients credited.
Polynomial direct_polynomial(GenContext& ctx, char x, char y, bool two_vars) {
  unsigned degree = static_cast<unsigned>(ctx.choose_range(2, 4));
  // Exponent patterns are free choices; only coefficients are credited.
  std::set<std::pair<unsigned, unsigned>> shape;
  shape.insert({degree, 0});
  std::size_t terms = static_cast<std::size_t>(ctx.choose_range(2, 4));
  for (int guard = 0; shape.size() < terms && guard < 20; ++guard) {
    unsigned ex = static_cast<unsigned>(ctx.choose_range(0, degree));
    unsigned ey = two_vars ? static_cast<unsigned>(ctx.choose_range(0, degree - ex)) : 0;
    shape.insert({ex, ey});
  }
  BigInt w = symmetric_width_for(ctx.alpha() / static_cast<double>(shape.size()));
  if (w < BigInt(2)) w = BigInt(2);
  Polynomial p;
  for (const auto& [ex, ey] : shape) {
    Monomial m = Monomial::var(x, ex);
    if (ey > 0) m = m * Monomial::var(y, ey);
    p += Polynomial::term(Rational(ctx.sample(Nonzero{-w, w}, "coeff")), m);
  }
  return p;
}

void gen_differentiate(GenContext& ctx) {
  std::size_t t = pick_template(ctx, kDifferentiate);
  unsigned order = t >= 2 ? static_cast<unsigned>(ctx.choose_range(1, 3)) : 1;
  char v;
  Polynomial body;
  std::string f;
  if (ctx.depth() > 0) {
    FunctionSlot fn = define_function(ctx, ctx.depth() - 1, 3, ctx.alpha());
    v = ctx.fresh_letter();
    body = fn.def.body.substitute(fn.def.param, Polynomial::var(v));
    f = call_of(fn, Expression::variable(v)).render();
  } else {
    v = ctx.fresh_letter();
    bool two = t != 0 && ctx.coin();
    char other = two ? ctx.fresh_letter() : v;
    body = direct_polynomial(ctx, v, other, two);
    f = format(body);
  }
  Polynomial d = body.differentiate(v, order);
  if (d.is_zero()) throw RetrySignal("derivative vanishes");
  Slots s{{"f", f}, {"v", std::string(1, v)}};
  if (t >= 2) s["ord"] = kOrders[order];
  finish(ctx, fill_template(kDifferentiate[t], s), format(d));
}

std::string solve_differentiate(std::size_t t, const Slots& s, const Environment& env) {
  Polynomial p = eval_polynomial(s.at("f"), env);
  char v;
  if (t == 0) {
    auto vars = p.variables();
    if (vars.size() != 1) throw InvalidInput("derivative needs a named variable");
    v = vars[0];
  } else {
    const std::string& name = s.at("v");
    if (name.size() != 1) throw ParseError("bad variable");
    v = name[0];
  }
  unsigned order = t >= 2 ? order_of(s.at("ord")) : 1;
  return format(p.differentiate(v, order));
}

}  // namespace

void register_calculus(Catalog& c) {
  auto s = spec("calculus", "differentiate", ModuleGroup::Train, kDifferentiate);
  s.inputs = {EntityKind::Function};
  s.output = EntityKind::Function;
  s.composable = true;
  c.add(Module(std::move(s), gen_differentiate, solve_differentiate));
}

}  // namespace mathgen::modules
