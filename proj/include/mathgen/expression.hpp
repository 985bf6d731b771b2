#pragma once

// Expression trees in the question grammar and their text form.
//
// Grammar (Python precedence):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('**' unary)?
//   primary := number | name | name '(' expr ')' | 'sqrt' '(' expr ')' | '(' expr ')'
// Names are single lowercase letters. A '-' directly applied to a number
// literal folds into a negative literal.

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mathgen/numeric.hpp"

namespace mathgen {

enum class ExprKind { Number, Variable, Call, Neg, Add, Sub, Mul, Div, Pow, Sqrt };

struct RenderStyle {
  /// "17 * 4" instead of "17*4" (also for '/').
  bool spaced_products = false;
};

class Expression {
 public:
  Expression() = default;

  /// Integer or decimal literal. `decimal` keeps the decimal surface form.
  static Expression number(Rational value, bool decimal = false);
  static Expression integer(const BigInt& v) { return number(Rational(v)); }
  /// p/q as a literal integer or a division of two integer literals.
  static Expression rational(const Rational& r);
  static Expression decimal(const ExactDecimal& d);
  static Expression variable(char name);
  static Expression call(char function, Expression argument);
  static Expression neg(Expression e);
  static Expression add(Expression a, Expression b);
  static Expression sub(Expression a, Expression b);
  static Expression mul(Expression a, Expression b);
  static Expression div(Expression a, Expression b);
  static Expression pow(Expression base, Expression exponent);
  static Expression sqrt(Expression e);

  bool empty() const { return node_ == nullptr; }
  ExprKind kind() const;
  const Rational& value() const;      // Number
  bool is_decimal_literal() const;    // Number
  char name() const;                  // Variable, Call
  const Expression& lhs() const;      // binary ops; operand of Neg/Sqrt/Call
  const Expression& rhs() const;      // binary ops

  bool is_number() const { return node_ && kind() == ExprKind::Number; }
  /// True for literals anywhere in the tree carrying a decimal point.
  bool contains_decimal() const;
  /// Names used as plain variables / as called functions.
  std::vector<char> variables() const;
  std::vector<char> functions() const;

  std::string render(RenderStyle style = {}) const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  struct Node;
  static Expression node(ExprKind kind, Expression a, Expression b);
  explicit Expression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses `text`. Throws ParseError carrying the byte offset of the problem.
Expression parse_expression(std::string_view text);

struct Equation {
  Expression lhs;
  Expression rhs;
  std::string render(RenderStyle style = {}) const { return lhs.render(style) + " = " + rhs.render(style); }
};

/// "lhs = rhs" with exactly one '='.
Equation parse_equation(std::string_view text);

/// Sum of terms rendered with sympy-like signs: a leading negative term keeps
/// its '-', later negative terms become " - |term|".
Expression signed_sum(const std::vector<Expression>& terms);
/// True if the rendered term starts with '-' (negative literal factor or Neg).
bool has_leading_minus(const Expression& term);
/// The term with its leading sign removed; requires has_leading_minus.
Expression strip_leading_minus(const Expression& term);

/// Replaces every occurrence of variable `name` by `with`.
Expression substitute(const Expression& e, char name, const Expression& with);

}  // namespace mathgen
