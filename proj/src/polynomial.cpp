#include "mathgen/polynomial.hpp"

#include <algorithm>
#include <set>

#include "mathgen/errors.hpp"

namespace mathgen {

Monomial Monomial::var(char name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.exps_[name] = exponent;
  return m;
}

unsigned Monomial::exponent(char name) const {
  auto it = exps_.find(name);
  return it == exps_.end() ? 0 : it->second;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : exps_) d += e;
  return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  for (const auto& [v, e] : b.exps_) m.exps_[v] += e;
  return m;
}

bool graded_before(const Monomial& a, const Monomial& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() > b.total_degree();
  std::set<char> vars;
  for (const auto& [v, e] : a.exponents()) vars.insert(v);
  for (const auto& [v, e] : b.exponents()) vars.insert(v);
  for (char v : vars) {
    if (a.exponent(v) != b.exponent(v)) return a.exponent(v) > b.exponent(v);
  }
  return false;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(Rational constant) {
  if (!constant.is_zero()) terms_[Monomial()] = std::move(constant);
}

Polynomial Polynomial::var(char name) { return term(Rational(1), Monomial::var(name)); }

Polynomial Polynomial::term(Rational coefficient, Monomial m) {
  Polynomial p;
  p.add_term(m, coefficient);
  return p;
}

Polynomial Polynomial::from_coefficients(char var, const std::vector<Rational>& coeffs) {
  Polynomial p;
  for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(Monomial::var(var, static_cast<unsigned>(i)), coeffs[i]);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw InvalidInput("expression is not constant: " + format(*this));
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<char> Polynomial::variables() const {
  std::set<char> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.exponents()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

unsigned Polynomial::degree(char var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

std::vector<Rational> Polynomial::univariate_coefficients(char var) const {
  for (char v : variables()) {
    if (v != var) throw InvalidInput(std::string("polynomial is not univariate in ") + var);
  }
  std::vector<Rational> out(degree(var) + 1, Rational(0));
  for (const auto& [m, c] : terms_) out[m.exponent(var)] = c;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::substitute(char var, const Polynomial& with) const {
  Polynomial out;
  // Cache powers of the replacement.
  std::vector<Polynomial> powers{Polynomial(Rational(1))};
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(var);
    while (powers.size() <= e) powers.push_back(powers.back() * with);
    Monomial rest;
    for (const auto& [v, k] : m.exponents()) {
      if (v != var) rest = rest * Monomial::var(v, k);
    }
    out += term(c, rest) * powers[e];
  }
  return out;
}

Polynomial Polynomial::differentiate(char var, unsigned order) const {
  Polynomial p = *this;
  for (unsigned step = 0; step < order; ++step) {
    Polynomial d;
    for (const auto& [m, c] : p.terms_) {
      unsigned e = m.exponent(var);
      if (e == 0) continue;
      Monomial lowered;
      for (const auto& [v, k] : m.exponents()) lowered = lowered * Monomial::var(v, v == var ? k - 1 : k);
      d.add_term(lowered, c * Rational(static_cast<long>(e)));
    }
    p = std::move(d);
  }
  return p;
}

Rational Polynomial::evaluate(const std::map<char, Rational>& assignment) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m.exponents()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) throw InvalidInput(std::string("no value for variable ") + v);
      t *= it->second.pow(e);
    }
    total += t;
  }
  return total;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

// Left-nested product of a leading coefficient and the variable powers,
// so "-x**2*y" renders without parentheses.
Expression term_expression(const Rational& c, const Monomial& m) {
  if (m.is_constant()) return Expression::rational(c);
  std::vector<Expression> factors;
  for (const auto& [v, e] : m.exponents()) {
    factors.push_back(e == 1 ? Expression::variable(v)
                             : Expression::pow(Expression::variable(v),
                                               Expression::integer(BigInt(static_cast<long>(e)))));
  }
  const BigInt& p = c.num();
  const BigInt& q = c.den();
  Expression top;
  if (p == BigInt(1)) {
    top = factors[0];
  } else if (p == BigInt(-1)) {
    top = Expression::neg(factors[0]);
  } else {
    top = Expression::mul(Expression::integer(p), factors[0]);
  }
  for (std::size_t i = 1; i < factors.size(); ++i) top = Expression::mul(top, factors[i]);
  if (q == BigInt(1)) return top;
  return Expression::div(top, Expression::integer(q));
}

}  // namespace

Expression to_expression(const Polynomial& p) {
  std::vector<std::pair<Monomial, Rational>> ordered(p.terms().begin(), p.terms().end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return graded_before(a.first, b.first); });
  std::vector<Expression> terms;
  terms.reserve(ordered.size());
  for (const auto& [m, c] : ordered) terms.push_back(term_expression(c, m));
  return signed_sum(terms);
}

std::string format(const Polynomial& p) { return to_expression(p).render(); }

// ---------------------------------------------------------------------------

Polynomial to_polynomial(const Expression& e, const Scope& scope) {
  switch (e.kind()) {
    case ExprKind::Number:
      return Polynomial(e.value());
    case ExprKind::Variable: {
      auto it = scope.values.find(e.name());
      if (it != scope.values.end()) return it->second;
      return Polynomial::var(e.name());
    }
    case ExprKind::Call: {
      auto it = scope.functions.find(e.name());
      if (it == scope.functions.end()) throw InvalidInput(std::string("undefined function ") + e.name());
      Polynomial arg = to_polynomial(e.lhs(), scope);
      return it->second.body.substitute(it->second.param, arg);
    }
    case ExprKind::Neg:
      return -to_polynomial(e.lhs(), scope);
    case ExprKind::Add:
      return to_polynomial(e.lhs(), scope) + to_polynomial(e.rhs(), scope);
    case ExprKind::Sub:
      return to_polynomial(e.lhs(), scope) - to_polynomial(e.rhs(), scope);
    case ExprKind::Mul:
      return to_polynomial(e.lhs(), scope) * to_polynomial(e.rhs(), scope);
    case ExprKind::Div: {
      Polynomial den = to_polynomial(e.rhs(), scope);
      if (!den.is_constant()) throw InvalidInput("division by a non-constant");
      Rational d = den.constant_value();
      if (d.is_zero()) throw InvalidInput("division by zero");
      return to_polynomial(e.lhs(), scope) * Polynomial(d.reciprocal());
    }
    case ExprKind::Pow: {
      Polynomial ex = to_polynomial(e.rhs(), scope);
      if (!ex.is_constant()) throw InvalidInput("non-constant exponent");
      Rational k = ex.constant_value();
      if (!k.is_integer() || k.sign() < 0 || k.num() > BigInt(64)) throw InvalidInput("exponent must be a small non-negative integer");
      return to_polynomial(e.lhs(), scope).pow(static_cast<unsigned>(k.num().to_int64()));
    }
    case ExprKind::Sqrt:
      throw InvalidInput("square root in polynomial context");
  }
  throw InvalidInput("unknown expression");
}

Polynomial poly_add(const std::vector<Scaled>& parts) {
  Polynomial out;
  for (const auto& part : parts) out += Polynomial(part.scalar) * part.poly;
  return out;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial compose(const FunctionDef& f, const FunctionDef& g) { return f.body.substitute(f.param, g.body); }

Polynomial differentiate(const Polynomial& p, char var, unsigned order) { return p.differentiate(var, order); }

Rational evaluate_poly(const Polynomial& p, const std::map<char, Rational>& assignment) {
  return p.evaluate(assignment);
}

Polynomial collect_terms(const Expression& e) { return to_polynomial(e); }

}  // namespace mathgen
