#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mathgen/expression.hpp"
#include "mathgen/numeric.hpp"
#include "mathgen/polynomial.hpp"

namespace mathgen {

// ---- linear equations -------------------------------------------------------

/// Unique solution of a linear equation in `var`. Degenerate or nonlinear
/// equations throw ContractViolation.
Rational solve_linear_1d(const Equation& eq, char var, const Scope& scope = {});

/// a*x + b*y = e, c*x + d*y = f.
struct LinearSystem2 {
  Rational a, b, c, d, e, f;
  char x = 'x';
  char y = 'y';
};

/// Throws ContractViolation on a zero determinant.
Rational solve_linear_2d(const LinearSystem2& sys, char target);
/// Reads a system from two equations linear in the two variables.
LinearSystem2 linear_system_from(const Equation& first, const Equation& second, char x, char y,
                                 const Scope& scope = {});

// ---- sequences --------------------------------------------------------------

struct SequenceSpec {
  Polynomial generator;  // in `var`, first shown term at var = 1
  char var = 'n';
  std::size_t shown = 0;

  BigInt term(long index) const;
  BigInt next_term() const { return term(static_cast<long>(shown) + 1); }
  unsigned degree() const { return generator.degree(var); }
};

/// Minimal-degree polynomial through the terms at 1, 2, ... by finite
/// differences. Needs at least two terms.
SequenceSpec fit_sequence(const std::vector<BigInt>& terms, char var = 'n');

// ---- comparison -------------------------------------------------------------

/// A number as it appears in a question: exact value plus surface text.
struct NumberToken {
  Rational value;
  std::string text;

  static NumberToken from_text(std::string_view text);
  static NumberToken of(const Rational& v);
};

std::strong_ordering compare_pair(const Rational& a, const Rational& b);
/// Stable exact sort; entries keep their surface text.
std::vector<NumberToken> sort_numbers(std::vector<NumberToken> xs, bool ascending = true);
/// Index of the entry nearest to `target`; ties go to the first. Throws
/// InvalidInput on an empty list.
std::size_t closest_to(const Rational& target, const std::vector<NumberToken>& xs);
/// Entry at rank k (1-based) among the largest or smallest.
const NumberToken& kth_extreme(const std::vector<NumberToken>& xs, std::size_t k, bool biggest);

// ---- measurement ------------------------------------------------------------

enum class UnitFamily { Length, Mass, Volume, Time };

struct UnitInfo {
  std::string_view symbol;
  std::string_view singular;
  std::string_view plural;
  UnitFamily family;
  Rational scale;  // size in the family's base unit
};

const std::vector<UnitInfo>& unit_table();
/// Lookup by symbol, singular or plural name.
const UnitInfo& unit_named(std::string_view name);
/// Throws InvalidInput across families.
Rational convert_units(const Rational& magnitude, const UnitInfo& from, const UnitInfo& to);

struct ClockTime {
  int hour = 12;  // 1..12
  int minute = 0;
  bool pm = false;

  static ClockTime parse(std::string_view text);
  static ClockTime from_minutes(long minutes_since_midnight);
  long minutes_since_midnight() const;
  /// "8:05 PM".
  std::string to_string() const;
  friend bool operator==(const ClockTime&, const ClockTime&) = default;
};

/// Minutes from t1 forward to t2 (0 when equal).
long time_between(const ClockTime& t1, const ClockTime& t2);
ClockTime add_minutes(const ClockTime& t, long minutes);

// ---- probability ------------------------------------------------------------

using LetterBag = std::map<char, unsigned>;

/// Bag counted from a letter string.
LetterBag bag_from_letters(std::string_view letters);
/// "{a: 1, b: 7}".
std::string format_bag(const LetterBag& bag);
unsigned bag_size(const LetterBag& bag);

BigInt binomial(unsigned n, unsigned k);
/// Probability of drawing exactly `seq` (in order) without replacement.
Rational prob_sequence_swr(const LetterBag& bag, std::string_view seq);
/// Probability that a draw of sum(counts) letters has exactly these counts.
Rational prob_level_set_swr(const LetterBag& bag, const std::map<char, unsigned>& counts);

}  // namespace mathgen
