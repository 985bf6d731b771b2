#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mathgen/expression.hpp"
#include "mathgen/numeric.hpp"

namespace mathgen {

/// Product of variables with positive exponents; empty = the constant 1.
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(char name, unsigned exponent = 1);

  const std::map<char, unsigned>& exponents() const { return exps_; }
  unsigned exponent(char name) const;
  unsigned total_degree() const;
  bool is_constant() const { return exps_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Storage order only; see `graded_before` for display order.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

 private:
  std::map<char, unsigned> exps_;
};

/// Display order: higher total degree first, then larger exponent of the
/// alphabetically earliest variable.
bool graded_before(const Monomial& a, const Monomial& b);

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational constant);  // NOLINT(google-explicit-constructor)
  static Polynomial var(char name);
  static Polynomial term(Rational coefficient, Monomial m);
  /// Univariate from coefficients, lowest degree first.
  static Polynomial from_coefficients(char var, const std::vector<Rational>& coeffs);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Throws InvalidInput unless is_constant().
  Rational constant_value() const;
  Rational coefficient(const Monomial& m) const;
  std::vector<char> variables() const;
  unsigned degree(char var) const;
  unsigned total_degree() const;
  /// Coefficients in `var`, lowest first; requires no other variables.
  std::vector<Rational> univariate_coefficients(char var) const;

  Polynomial pow(unsigned exponent) const;
  Polynomial substitute(char var, const Polynomial& with) const;
  Polynomial differentiate(char var, unsigned order = 1) const;
  /// Throws InvalidInput if a variable of the polynomial is unassigned.
  Rational evaluate(const std::map<char, Rational>& assignment) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// Canonical tree for a polynomial (terms in display order).
Expression to_expression(const Polynomial& p);
/// "546*a**2 - 108*a - 118"; zero renders "0".
std::string format(const Polynomial& p);

struct FunctionDef {
  char name = 'f';
  char param = 'x';
  Polynomial body;
};

struct Scaled {
  Rational scalar;
  Polynomial poly;
};

/// Names bound while turning an expression into a polynomial.
struct Scope {
  std::map<char, Polynomial> values;
  std::map<char, FunctionDef> functions;
};

/// Exact expansion. Calls use `scope.functions`; variables in
/// `scope.values` are replaced, others stay symbolic. Division is only by
/// nonzero constants and powers need constant non-negative integer
/// exponents; anything else throws InvalidInput.
Polynomial to_polynomial(const Expression& e, const Scope& scope = {});

Polynomial poly_add(const std::vector<Scaled>& parts);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
/// f's body with f's parameter replaced by g's body.
Polynomial compose(const FunctionDef& f, const FunctionDef& g);
Polynomial differentiate(const Polynomial& p, char var, unsigned order = 1);
Rational evaluate_poly(const Polynomial& p, const std::map<char, Rational>& assignment);
Polynomial collect_terms(const Expression& e);

}  // namespace mathgen
