#include <gtest/gtest.h>

#include "mathgen/algebra.hpp"
#include "mathgen/errors.hpp"
#include "mathgen/expression.hpp"
#include "mathgen/generators.hpp"
#include "mathgen/polynomial.hpp"

using namespace mathgen;

namespace {

Polynomial P(const char* text) { return to_polynomial(parse_expression(text)); }
Rational R(long p, long q = 1) { return Rational(BigInt(p), BigInt(q)); }

FunctionDef F(char name, char param, const char* body) { return {name, param, P(body)}; }

}  // namespace

TEST(PolyAdd, Examples) {
  EXPECT_TRUE(poly_add({{R(1), P("x + 1")}, {R(1), P("-x - 1")}}).is_zero());
  EXPECT_EQ(format(poly_add({{R(-118), P("-2*c**3 + c")}, {R(54), P("-c**3 - c**2")}})), "182*c**3 - 54*c**2 - 118*c");
  EXPECT_EQ(format(poly_add({{R(2), P("2*x + 3")}, {R(17), P("x - 4")}})), "21*x - 62");
}

TEST(PolyMul, Examples) {
  EXPECT_EQ(format(poly_mul(P("x + 1"), P("2*x + 3"))), "2*x**2 + 5*x + 3");
  EXPECT_TRUE(poly_mul(P("x**3 - 2"), Polynomial()).is_zero());
  EXPECT_EQ(format(poly_mul(P("x - 7"), P("x + 1"))), "x**2 - 6*x - 7");
}

TEST(Compose, Examples) {
  FunctionDef f = F('f', 'x', "2*x + 3"), h = F('h', 'x', "-5*x - 8"), g = F('g', 'x', "7*x - 4");
  FunctionDef hf{'k', 'x', compose(h, f)};
  EXPECT_EQ(format(compose(g, hf)), "-70*x - 165");

  FunctionDef x = F('x', 'g', "9*g + 1"), q = F('q', 'c', "2*c + 1"), ff = F('f', 'i', "3*i - 39");
  FunctionDef w{'w', 'j', compose(q, x)};
  Polynomial fw = compose(ff, w);
  char param = fw.variables().at(0);
  EXPECT_EQ(format(fw.substitute(param, Polynomial::var('a'))), "54*a - 30");

  FunctionDef p = F('p', 'x', "3*x**2 - x + 4"), id = F('i', 'x', "x");
  EXPECT_EQ(compose(id, p), p.body);
  EXPECT_EQ(compose(p, id), p.body);
}

TEST(Differentiate, Examples) {
  EXPECT_EQ(format(differentiate(P("182*a**3 - 54*a**2 - 118*a"), 'a')), "546*a**2 - 108*a - 118");
  EXPECT_TRUE(differentiate(P("17"), 'x').is_zero());
  EXPECT_EQ(format(differentiate(differentiate(P("x**2*y**2 + 2*x*y"), 'x'), 'y')), "4*x*y + 2");
  EXPECT_EQ(format(differentiate(P("x**4"), 'x', 3)), "24*x");
}

TEST(EvaluatePoly, Examples) {
  EXPECT_EQ(evaluate_poly(P("x**2*y**2 + 2*x*y"), {{'x', R(2)}, {'y', R(3)}}), R(48));
  EXPECT_EQ(evaluate_poly(P("3*x**2 - 7*x*y"), {{'x', R(0)}, {'y', R(0)}}), R(0));
  EXPECT_EQ(evaluate_poly(P("-611*c + 2188857"), {{'c', R(-103)}}), R(2251790));
  EXPECT_THROW(evaluate_poly(P("x + y"), {{'x', R(1)}}), InvalidInput);
}

TEST(CoefficientNamed, Examples) {
  Polynomial e = poly_mul(P("x + 1"), P("2*x + 3"));
  NamedForm form{'x', {{'a', 2}, {'b', 1}, {'c', 0}}};
  EXPECT_EQ(form.render(), "a*x**2 + b*x + c");
  EXPECT_EQ(coefficient_named(e, form, 'b'), R(5));
  EXPECT_EQ(coefficient_named(e, form, 'a'), R(2));
  EXPECT_EQ(coefficient_named(P("x**2 - 9"), form, 'b'), R(0));
  EXPECT_THROW(coefficient_named(e, form, 'z'), InvalidInput);
}

TEST(SimplifyPower, Examples) {
  EXPECT_EQ(simplify_power(parse_expression("x**3/x**2"), 'x').render(), "x");
  EXPECT_EQ(simplify_power(parse_expression("(m**(-2))**5"), 'm').render(), "m**(-10)");
  EXPECT_EQ(simplify_power(parse_expression("x**0*x"), 'x').render(), "x");
  EXPECT_EQ(simplify_power(parse_expression("x**(1/3)*x**(1/3)"), 'x').render(), "x**(2/3)");
  EXPECT_EQ(simplify_power(parse_expression("x/x"), 'x').render(), "1");
}

TEST(SimplifySurd, Examples) {
  EXPECT_EQ(format(simplify_surd(parse_expression("(sqrt(10)*-9)/(sqrt(2)*12)*-8"))), "6*sqrt(5)");
  Surd four = simplify_surd(parse_expression("sqrt(4)"));
  EXPECT_EQ(four.radicand, BigInt(1));
  EXPECT_EQ(format(four), "2");
  EXPECT_EQ(format(simplify_surd(parse_expression("sqrt(50)"))), "5*sqrt(2)");
  EXPECT_EQ(format(simplify_surd(parse_expression("1/sqrt(2)"))), "sqrt(2)/2");
  EXPECT_THROW(simplify_surd(parse_expression("sqrt(2) + sqrt(3)")), InvalidInput);
}

TEST(PolyRoots, Examples) {
  auto r = poly_roots(P("2*x**2 + 5*x + 3"), 'x');
  EXPECT_EQ(format_roots(r), "-3/2, -1");
  EXPECT_EQ(format_factorization(P("2*x**2 + 5*x + 3"), 'x'), "(x + 1)*(2*x + 3)");
  auto sq = poly_roots(P("x**2"), 'x');
  ASSERT_EQ(sq.size(), 1u);
  EXPECT_EQ(sq[0].root, R(0));
  EXPECT_EQ(sq[0].multiplicity, 2u);
  EXPECT_EQ(format_roots(poly_roots(P("x**2 - 12*x + 27"), 'x')), "3, 9");
  EXPECT_THROW(poly_roots(P("x**2 - 2"), 'x'), ContractViolation);
}

TEST(CollectTerms, Examples) {
  EXPECT_EQ(format(collect_terms(parse_expression("5*x + 4*y + x - 7*y"))), "6*x - 3*y");
  EXPECT_TRUE(collect_terms(parse_expression("x - x")).is_zero());
  EXPECT_EQ(format(collect_terms(parse_expression("3*(2*y - 5)"))), "6*y - 15");
}

TEST(Format, Examples) {
  EXPECT_EQ(format(P("546*a**2 - 108*a - 118")), "546*a**2 - 108*a - 118");
  EXPECT_EQ(format(R(1, 110)), "1/110");
  EXPECT_EQ(format_bool(false), "False");
  EXPECT_EQ(format_bool(true), "True");
  EXPECT_EQ(format(Polynomial()), "0");
  EXPECT_EQ(format(P("-x**2*y + x - 1")), "-x**2*y + x - 1");
  EXPECT_EQ(format_list({"3", "13", "19", "317453"}), "3, 13, 19, 317453");
}

TEST(Parse, Examples) {
  EXPECT_EQ(to_polynomial(parse_expression("2*x**2 + 5*x + 3")), poly_mul(P("x + 1"), P("2*x + 3")));
  Expression d = parse_expression("-841469015.544");
  ASSERT_TRUE(d.is_number());
  EXPECT_TRUE(d.is_decimal_literal());
  EXPECT_EQ(ExactDecimal::from_rational(d.value()).value(), ExactDecimal(BigInt(-841469015544LL), 3));
  try {
    parse_expression("((");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(parse_expression("2 +"), ParseError);
  EXPECT_THROW(parse_expression("x y"), ParseError);
}

TEST(Parse, PowerIsRightAssociativeAndBindsTighterThanUnaryMinus) {
  EXPECT_EQ(format(P("-x**2")), "-x**2");
  EXPECT_EQ(to_polynomial(parse_expression("2**3**2")).constant_value(), R(512));
}

// ---- properties ------------------------------------------------------------

class SymbolicProperty : public ::testing::Test {
 protected:
  RandomStream rng{2024};
  EntropyBudget budget;
  Polynomial random_poly(char v) {
    return random_polynomial(v, static_cast<unsigned>(rng.range(0, 4)), BigInt(20), rng, budget);
  }
};

TEST_F(SymbolicProperty, ParseFormatIdentity) {
  for (int i = 0; i < 1000; ++i) {
    Polynomial p = random_poly('x') * random_poly('y') + random_poly('x');
    std::string s = format(p);
    EXPECT_EQ(to_polynomial(parse_expression(s)), p) << s;
    EXPECT_EQ(format(to_polynomial(parse_expression(s))), s);
    EXPECT_EQ(parse_expression(s).render(), s);
    EXPECT_EQ(s.find('('), std::string::npos) << s;
  }
}

TEST_F(SymbolicProperty, DerivativeIsLinear) {
  for (int i = 0; i < 1000; ++i) {
    Polynomial p = random_poly('x'), q = random_poly('x');
    Rational a(rng.range(-9, 9)), b(rng.range(-9, 9));
    Polynomial lhs = differentiate(poly_add({{a, p}, {b, q}}), 'x');
    Polynomial rhs = poly_add({{a, differentiate(p, 'x')}, {b, differentiate(q, 'x')}});
    EXPECT_EQ(lhs, rhs);
  }
}

TEST_F(SymbolicProperty, CompositionIsAssociative) {
  for (int i = 0; i < 500; ++i) {
    FunctionDef f{'f', 'x', random_poly('x')}, g{'g', 'x', random_poly('x')}, h{'h', 'x', random_poly('x')};
    FunctionDef gh{'k', 'x', compose(g, h)}, fg{'m', 'x', compose(f, g)};
    EXPECT_EQ(compose(f, gh), compose(fg, h));
  }
}

TEST_F(SymbolicProperty, RootsSubstituteToZero) {
  for (int i = 0; i < 500; ++i) {
    Polynomial p(Rational(rng.range(1, 5)));
    unsigned d = static_cast<unsigned>(rng.range(1, 4));
    for (unsigned k = 0; k < d; ++k) {
      Rational root(BigInt(rng.range(-30, 30)), BigInt(rng.range(1, 4)));
      p = p * Polynomial::from_coefficients('x', {-root, Rational(1)});
    }
    auto roots = poly_roots(p, 'x');
    unsigned total = 0;
    for (const auto& r : roots) {
      EXPECT_TRUE(evaluate_poly(p, {{'x', r.root}}).is_zero());
      total += r.multiplicity;
    }
    EXPECT_EQ(total, d);
  }
}

TEST_F(SymbolicProperty, SurdSquaresAgree) {
  for (int i = 0; i < 1000; ++i) {
    long a = rng.range(1, 5000), k = rng.range(-12, 12);
    if (k == 0) k = 1;
    std::string text = std::to_string(k) + "*sqrt(" + std::to_string(a) + ")";
    Surd s = simplify_surd(parse_expression(text));
    EXPECT_EQ(s.squared(), Rational(BigInt(k * k * a)));
    EXPECT_EQ(square_part(s.radicand), BigInt(1));
  }
}
