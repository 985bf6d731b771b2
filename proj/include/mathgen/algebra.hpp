#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mathgen/expression.hpp"
#include "mathgen/numeric.hpp"
#include "mathgen/polynomial.hpp"

namespace mathgen {

/// coefficient * sqrt(radicand) with a square-free radicand >= 1.
struct Surd {
  Rational coefficient;
  BigInt radicand{1};

  bool is_rational() const { return radicand == BigInt(1) || coefficient.is_zero(); }
  /// Exact square of the value.
  Rational squared() const { return coefficient * coefficient * Rational(radicand); }
  friend bool operator==(const Surd&, const Surd&) = default;
};

/// Largest s with s*s dividing n (n >= 1).
BigInt square_part(const BigInt& n);
/// sqrt(r) for r >= 0 as a canonical surd.
Surd sqrt_surd(const Rational& r);
/// Evaluates sqrt/*, /, +, -, integer powers and rational literals to a
/// single canonical surd. Sums of unlike radicands throw InvalidInput.
Surd simplify_surd(const Expression& e);
/// "6*sqrt(5)", "sqrt(2)/2", "-3*sqrt(2)/4", "7", "0".
std::string format(const Surd& s);
Expression to_expression(const Surd& s);

/// Exponent k with e == var**k, for products, quotients and powers of one
/// variable. Throws InvalidInput on anything else.
Rational power_exponent(const Expression& e, char var);
/// "x**(-10)", "x**(2/3)", "x", "1".
Expression power_expression(char var, const Rational& exponent);
Expression simplify_power(const Expression& e, char var);

struct RootMultiplicity {
  Rational root;
  unsigned multiplicity = 1;
  friend bool operator==(const RootMultiplicity&, const RootMultiplicity&) = default;
};

/// Roots of a univariate polynomial that splits over Q, ascending.
/// Irreducible leftovers throw ContractViolation.
std::vector<RootMultiplicity> poly_roots(const Polynomial& p, char var);
/// Factored rendering: "(x + 1)*(2*x + 3)", "-2*(x - 3)**2", "x*(x + 4)".
std::string format_factorization(const Polynomial& p, char var);
/// Distinct roots ascending, comma separated: "-3/2, -1".
std::string format_roots(const std::vector<RootMultiplicity>& roots);

/// A template like "a*x**2 + b*x + c": letter for each power of `var`.
struct NamedForm {
  char var = 'x';
  std::vector<std::pair<char, unsigned>> terms;  // (letter, power) in display order
  std::string render() const;
};

/// Coefficient the form assigns to `letter` after matching `expanded`.
/// Throws InvalidInput if the form's top power differs from the degree, a
/// term of `expanded` has no letter, or `letter` is not in the form.
Rational coefficient_named(const Polynomial& expanded, const NamedForm& form, char letter);

std::string format(const Rational& r);
std::string format(const ExactDecimal& d);
std::string format_bool(bool b);
std::string format_list(const std::vector<std::string>& items);

}  // namespace mathgen
