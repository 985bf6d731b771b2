#include "mathgen/algebra.hpp"

#include <algorithm>
#include <map>

#include "mathgen/errors.hpp"
#include "mathgen/number_theory.hpp"

namespace mathgen {

BigInt square_part(const BigInt& n) {
  if (n.sign() <= 0) throw InvalidInput("square_part requires n >= 1");
  if (n == BigInt(1)) return BigInt(1);
  BigInt s(1);
  for (const auto& f : prime_factorize(n)) s *= f.prime.pow(f.multiplicity / 2);
  return s;
}

Surd sqrt_surd(const Rational& r) {
  if (r.sign() < 0) throw InvalidInput("square root of a negative number");
  if (r.is_zero()) return {Rational(0), BigInt(1)};
  // sqrt(p/q) = sqrt(p*q)/q
  BigInt pq = r.num() * r.den();
  BigInt s = square_part(pq);
  return {Rational(s, r.den()), pq / (s * s)};
}

namespace {

Surd canonical(Rational c, BigInt d) {
  if (c.is_zero()) return {Rational(0), BigInt(1)};
  return {std::move(c), std::move(d)};
}

Surd surd_mul(const Surd& a, const Surd& b) {
  // sqrt(d) sqrt(e) = g sqrt((d/g)(e/g)) with g = gcd(d, e); both square-free.
  BigInt g = gcd(a.radicand, b.radicand);
  return canonical(a.coefficient * b.coefficient * Rational(g), (a.radicand / g) * (b.radicand / g));
}

Surd surd_reciprocal(const Surd& a) {
  if (a.coefficient.is_zero()) throw InvalidInput("division by zero");
  // 1/(c sqrt(d)) = sqrt(d)/(c d)
  return canonical((a.coefficient * Rational(a.radicand)).reciprocal(), a.radicand);
}

Surd surd_add(const Surd& a, const Surd& b) {
  if (a.coefficient.is_zero()) return b;
  if (b.coefficient.is_zero()) return a;
  if (a.radicand != b.radicand) throw InvalidInput("sum of unlike surds");
  return canonical(a.coefficient + b.coefficient, a.radicand);
}

}  // namespace

Surd simplify_surd(const Expression& e) {
  switch (e.kind()) {
    case ExprKind::Number:
      return canonical(e.value(), BigInt(1));
    case ExprKind::Neg: {
      Surd s = simplify_surd(e.lhs());
      return canonical(-s.coefficient, s.radicand);
    }
    case ExprKind::Add:
      return surd_add(simplify_surd(e.lhs()), simplify_surd(e.rhs()));
    case ExprKind::Sub: {
      Surd r = simplify_surd(e.rhs());
      return surd_add(simplify_surd(e.lhs()), canonical(-r.coefficient, r.radicand));
    }
    case ExprKind::Mul:
      return surd_mul(simplify_surd(e.lhs()), simplify_surd(e.rhs()));
    case ExprKind::Div:
      return surd_mul(simplify_surd(e.lhs()), surd_reciprocal(simplify_surd(e.rhs())));
    case ExprKind::Sqrt: {
      Surd inner = simplify_surd(e.lhs());
      if (!inner.is_rational()) throw InvalidInput("nested square root");
      return sqrt_surd(inner.coefficient);
    }
    case ExprKind::Pow: {
      Surd k = simplify_surd(e.rhs());
      if (!k.is_rational() || !k.coefficient.is_integer() || k.coefficient.num().abs() > BigInt(64)) {
        throw InvalidInput("surd exponent must be a small integer");
      }
      long n = static_cast<long>(k.coefficient.num().to_int64());
      Surd base = simplify_surd(e.lhs());
      if (n < 0) {
        base = surd_reciprocal(base);
        n = -n;
      }
      Surd out{Rational(1), BigInt(1)};
      for (long i = 0; i < n; ++i) out = surd_mul(out, base);
      return out;
    }
    case ExprKind::Variable:
    case ExprKind::Call:
      break;
  }
  throw InvalidInput("expression is not a surd: " + e.render());
}

Expression to_expression(const Surd& s) {
  if (s.is_rational()) return Expression::rational(s.coefficient);
  Expression root = Expression::sqrt(Expression::integer(s.radicand));
  const BigInt& p = s.coefficient.num();
  const BigInt& q = s.coefficient.den();
  Expression top;
  if (p == BigInt(1)) {
    top = root;
  } else if (p == BigInt(-1)) {
    top = Expression::neg(root);
  } else {
    top = Expression::mul(Expression::integer(p), root);
  }
  if (q == BigInt(1)) return top;
  return Expression::div(top, Expression::integer(q));
}

std::string format(const Surd& s) { return to_expression(s).render(); }

// ---------------------------------------------------------------------------

Rational power_exponent(const Expression& e, char var) {
  switch (e.kind()) {
    case ExprKind::Variable:
      if (e.name() == var) return Rational(1);
      break;
    case ExprKind::Number:
      if (e.value() == Rational(1)) return Rational(0);
      break;
    case ExprKind::Mul:
      return power_exponent(e.lhs(), var) + power_exponent(e.rhs(), var);
    case ExprKind::Div:
      return power_exponent(e.lhs(), var) - power_exponent(e.rhs(), var);
    case ExprKind::Sqrt:
      return power_exponent(e.lhs(), var) / Rational(2);
    case ExprKind::Pow: {
      Polynomial k = to_polynomial(e.rhs());
      if (!k.is_constant()) break;
      return power_exponent(e.lhs(), var) * k.constant_value();
    }
    default:
      break;
  }
  throw InvalidInput("not a power of " + std::string(1, var) + ": " + e.render());
}

Expression power_expression(char var, const Rational& exponent) {
  if (exponent.is_zero()) return Expression::integer(1);
  if (exponent == Rational(1)) return Expression::variable(var);
  return Expression::pow(Expression::variable(var), Expression::rational(exponent));
}

Expression simplify_power(const Expression& e, char var) { return power_expression(var, power_exponent(e, var)); }

// ---------------------------------------------------------------------------

namespace {

std::vector<BigInt> positive_divisors(const BigInt& n) {
  std::vector<BigInt> divs{BigInt(1)};
  if (n == BigInt(1)) return divs;
  for (const auto& f : prime_factorize(n)) {
    std::size_t base = divs.size();
    BigInt pk(1);
    for (unsigned m = 0; m < f.multiplicity; ++m) {
      pk *= f.prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Integer coefficients (lowest first) proportional to p.
std::vector<BigInt> integer_coefficients(const Polynomial& p, char var) {
  std::vector<Rational> rc = p.univariate_coefficients(var);
  BigInt den(1);
  for (const auto& c : rc) den = lcm(den, c.den());
  std::vector<BigInt> out;
  out.reserve(rc.size());
  for (const auto& c : rc) out.push_back(c.num() * (den / c.den()));
  return out;
}

Rational eval_int_poly(const std::vector<BigInt>& c, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + Rational(c[i]);
  return acc;
}

// Divides by (q x - p), exact; coefficients stay integral by Gauss's lemma.
std::vector<BigInt> deflate(const std::vector<BigInt>& c, const BigInt& p, const BigInt& q) {
  std::size_t n = c.size() - 1;
  std::vector<BigInt> out(n);
  // c(x) = (q x - p) * out(x); solve from the top coefficient down.
  BigInt carry(0);
  for (std::size_t i = n; i >= 1; --i) {
    BigInt top = c[i] + carry;  // coefficient of x^i still to explain
    out[i - 1] = top / q;
    carry = out[i - 1] * p;
  }
  return out;
}

}  // namespace

std::vector<RootMultiplicity> poly_roots(const Polynomial& p, char var) {
  if (p.is_zero()) throw InvalidInput("zero polynomial has no finite root set");
  std::vector<BigInt> c = integer_coefficients(p, var);
  std::map<Rational, unsigned> roots;
  while (c.size() > 1 && c.front().is_zero()) {
    c.erase(c.begin());
    ++roots[Rational(0)];
  }
  while (c.size() > 1) {
    bool found = false;
    for (const BigInt& num : positive_divisors(c.front().abs())) {
      for (const BigInt& den : positive_divisors(c.back().abs())) {
        if (gcd(num, den) != BigInt(1)) continue;
        for (const BigInt& s : {num, -num}) {
          if (!eval_int_poly(c, Rational(s, den)).is_zero()) continue;
          c = deflate(c, s, den);
          ++roots[Rational(s, den)];
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) throw ContractViolation("polynomial does not split over the rationals: " + format(p));
  }
  std::vector<RootMultiplicity> out;
  for (const auto& [r, m] : roots) out.push_back({r, m});
  return out;
}

std::string format_factorization(const Polynomial& p, char var) {
  std::vector<RootMultiplicity> roots = poly_roots(p, var);
  // Leading coefficient over the product of primitive factor leads.
  Rational lead = p.univariate_coefficients(var).back();
  BigInt lead_product(1);
  for (const auto& r : roots) lead_product *= r.root.den().pow(r.multiplicity);
  Rational content = lead / Rational(lead_product);

  std::size_t factor_count = roots.size();
  std::string body;
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    const Rational& r = it->root;
    Polynomial f = Polynomial::term(Rational(r.den()), Monomial::var(var)) - Polynomial(Rational(r.num()));
    std::string text = format(f);
    bool sum = f.terms().size() > 1;
    bool needs_parens = sum && (factor_count > 1 || it->multiplicity > 1 || content != Rational(1));
    if (needs_parens) text = "(" + text + ")";
    if (it->multiplicity > 1) {
      if (!needs_parens && f.terms().begin()->second != Rational(1)) text = "(" + text + ")";
      text += "**" + std::to_string(it->multiplicity);
    }
    if (!body.empty()) body += "*";
    body += text;
  }
  if (body.empty()) return format(content);

  std::string out;
  const BigInt& cn = content.num();
  if (cn == BigInt(-1)) {
    out = "-";
  } else if (cn != BigInt(1)) {
    out = cn.to_string() + "*";
  }
  out += body;
  if (content.den() != BigInt(1)) out += "/" + content.den().to_string();
  return out;
}

std::string format_roots(const std::vector<RootMultiplicity>& roots) {
  std::vector<std::string> items;
  for (const auto& r : roots) items.push_back(format(r.root));
  return format_list(items);
}

// ---------------------------------------------------------------------------

std::string NamedForm::render() const {
  std::vector<Expression> parts;
  for (const auto& [letter, power] : terms) {
    Expression coeff = Expression::variable(letter);
    if (power == 0) {
      parts.push_back(coeff);
    } else {
      parts.push_back(Expression::mul(coeff, power_expression(var, Rational(static_cast<long>(power)))));
    }
  }
  return signed_sum(parts).render();
}

Rational coefficient_named(const Polynomial& expanded, const NamedForm& form, char letter) {
  unsigned top = 0;
  std::map<unsigned, char> by_power;
  for (const auto& [l, power] : form.terms) {
    top = std::max(top, power);
    by_power[power] = l;
  }
  if (expanded.degree(form.var) != top) throw InvalidInput("form degree does not match the polynomial");
  std::vector<Rational> coeffs = expanded.univariate_coefficients(form.var);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_zero() && !by_power.count(static_cast<unsigned>(i))) {
      throw InvalidInput("form has no letter for power " + std::to_string(i));
    }
  }
  for (const auto& [l, power] : form.terms) {
    if (l == letter) return power < coeffs.size() ? coeffs[power] : Rational(0);
  }
  throw InvalidInput(std::string("letter not in form: ") + letter);
}

// ---------------------------------------------------------------------------

std::string format(const Rational& r) { return r.to_string(); }
std::string format(const ExactDecimal& d) { return d.to_string(); }
std::string format_bool(bool b) { return b ? "True" : "False"; }

std::string format_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace mathgen
