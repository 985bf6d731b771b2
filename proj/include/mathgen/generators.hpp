#pragma once

// Answer-first construction helpers shared by question modules.

#include <string>
#include <vector>

#include "mathgen/expression.hpp"
#include "mathgen/numeric.hpp"
#include "mathgen/polynomial.hpp"
#include "mathgen/sampler.hpp"
#include "mathgen/solvers.hpp"

namespace mathgen {

struct ArithmeticOptions {
  bool add_sub = true;
  bool mul_div = true;
  /// Sizing of each sampled operand.
  double leaf_alpha = 2.0;
  /// Sizing of multiplier/divisor operands (kept smaller so values stay short).
  double factor_alpha = 1.0;
};

/// Expression over + - * / with exactly op_count + 1 integer literals whose
/// exact value is `answer`. Every sampled operand is credited to `budget`.
Expression backward_generate_arithmetic(const Rational& answer, int op_count, RandomStream& rng,
                                        EntropyBudget& budget, const ArithmeticOptions& options = {});

/// Integer coefficient rows with nonzero determinant; right-hand sides are
/// computed from the solution. Coefficients are nonzero in [-w, w] with w
/// sized by `coeff_alpha`.
LinearSystem2 backward_generate_linear_2d(const Rational& x_value, const Rational& y_value, char x, char y,
                                          RandomStream& rng, EntropyBudget& budget, double coeff_alpha = 1.5);

/// Equation text "a*x + b*y = e" for one row of a system.
Equation linear_row(const Rational& a, const Rational& b, const Rational& rhs, char x, char y);

/// Univariate polynomial of exactly `degree` with integer coefficients in
/// [-width, width]; the leading one is nonzero. All coefficients credited.
Polynomial random_polynomial(char var, unsigned degree, const BigInt& width, RandomStream& rng,
                             EntropyBudget& budget);

}  // namespace mathgen
