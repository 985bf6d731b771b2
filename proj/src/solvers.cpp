#include "mathgen/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "mathgen/errors.hpp"

namespace mathgen {

namespace {

// (coefficient of var, constant) for a polynomial of degree <= 1 in var.
std::pair<Rational, Rational> linear_parts(const Polynomial& p, char var) {
  Rational slope(0), constant(0);
  for (const auto& [m, c] : p.terms()) {
    if (m.is_constant()) {
      constant = c;
    } else if (m.exponents().size() == 1 && m.exponent(var) == 1) {
      slope = c;
    } else {
      throw ContractViolation("equation is not linear in " + std::string(1, var));
    }
  }
  return {slope, constant};
}

}  // namespace

Rational solve_linear_1d(const Equation& eq, char var, const Scope& scope) {
  Polynomial diff = to_polynomial(eq.lhs, scope) - to_polynomial(eq.rhs, scope);
  auto [slope, constant] = linear_parts(diff, var);
  if (slope.is_zero()) throw ContractViolation("degenerate linear equation: " + eq.render());
  return -constant / slope;
}

Rational solve_linear_2d(const LinearSystem2& s, char target) {
  Rational det = s.a * s.d - s.b * s.c;
  if (det.is_zero()) throw ContractViolation("singular linear system");
  if (target == s.x) return (s.e * s.d - s.b * s.f) / det;
  if (target == s.y) return (s.a * s.f - s.e * s.c) / det;
  throw InvalidInput(std::string("unknown variable ") + target);
}

LinearSystem2 linear_system_from(const Equation& first, const Equation& second, char x, char y,
                                 const Scope& scope) {
  auto row = [&](const Equation& eq, Rational& a, Rational& b, Rational& rhs) {
    Polynomial diff = to_polynomial(eq.lhs, scope) - to_polynomial(eq.rhs, scope);
    a = diff.coefficient(Monomial::var(x));
    b = diff.coefficient(Monomial::var(y));
    rhs = -diff.coefficient(Monomial());
    Polynomial rest = diff - Polynomial::term(a, Monomial::var(x)) - Polynomial::term(b, Monomial::var(y)) +
                      Polynomial(rhs);
    if (!rest.is_zero()) throw ContractViolation("system is not linear in " + std::string{x, ',', y});
  };
  LinearSystem2 s;
  s.x = x;
  s.y = y;
  row(first, s.a, s.b, s.e);
  row(second, s.c, s.d, s.f);
  return s;
}

// ---------------------------------------------------------------------------

BigInt SequenceSpec::term(long index) const {
  Rational v = generator.evaluate({{var, Rational(index)}});
  if (!v.is_integer()) throw ContractViolation("sequence term is not an integer");
  return v.num();
}

SequenceSpec fit_sequence(const std::vector<BigInt>& terms, char var) {
  if (terms.size() < 2) throw InvalidInput("fit_sequence needs at least two terms");
  // Leading entries of the difference table until a row is constant.
  std::vector<BigInt> leads;
  std::vector<BigInt> row = terms;
  while (true) {
    leads.push_back(row.front());
    bool constant = std::all_of(row.begin(), row.end(), [&](const BigInt& v) { return v == row.front(); });
    if (constant || row.size() == 1) break;
    std::vector<BigInt> next;
    for (std::size_t i = 1; i < row.size(); ++i) next.push_back(row[i] - row[i - 1]);
    row = std::move(next);
  }
  // Newton form: sum_j leads[j] * C(n - 1, j).
  Polynomial gen;
  Polynomial falling(Rational(1));
  Polynomial n = Polynomial::var(var);
  for (std::size_t j = 0; j < leads.size(); ++j) {
    if (j > 0) {
      falling = falling * (n - Polynomial(Rational(static_cast<long>(j)))) *
                Polynomial(Rational(BigInt(1), BigInt(static_cast<long>(j))));
    }
    gen += Polynomial(Rational(leads[j])) * falling;
  }
  return {gen, var, terms.size()};
}

// ---------------------------------------------------------------------------

NumberToken NumberToken::from_text(std::string_view text) { return {Rational::parse(text), std::string(text)}; }

NumberToken NumberToken::of(const Rational& v) { return {v, v.to_string()}; }

std::strong_ordering compare_pair(const Rational& a, const Rational& b) { return a <=> b; }

std::vector<NumberToken> sort_numbers(std::vector<NumberToken> xs, bool ascending) {
  std::stable_sort(xs.begin(), xs.end(), [&](const NumberToken& l, const NumberToken& r) {
    return ascending ? l.value < r.value : r.value < l.value;
  });
  return xs;
}

std::size_t closest_to(const Rational& target, const std::vector<NumberToken>& xs) {
  if (xs.empty()) throw InvalidInput("closest_to needs a nonempty list");
  std::size_t best = 0;
  Rational best_d = (xs[0].value - target).abs();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    Rational d = (xs[i].value - target).abs();
    if (d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

const NumberToken& kth_extreme(const std::vector<NumberToken>& xs, std::size_t k, bool biggest) {
  if (k < 1 || k > xs.size()) throw InvalidInput("k out of range");
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return biggest ? xs[r].value < xs[l].value : xs[l].value < xs[r].value;
  });
  return xs[order[k - 1]];
}

// ---------------------------------------------------------------------------

const std::vector<UnitInfo>& unit_table() {
  static const std::vector<UnitInfo> table = {
      {"mm", "millimetre", "millimetres", UnitFamily::Length, Rational(1, 1000)},
      {"cm", "centimetre", "centimetres", UnitFamily::Length, Rational(1, 100)},
      {"m", "metre", "metres", UnitFamily::Length, Rational(1)},
      {"km", "kilometre", "kilometres", UnitFamily::Length, Rational(1000)},
      {"mg", "milligram", "milligrams", UnitFamily::Mass, Rational(1, 1000)},
      {"g", "gram", "grams", UnitFamily::Mass, Rational(1)},
      {"kg", "kilogram", "kilograms", UnitFamily::Mass, Rational(1000)},
      {"t", "tonne", "tonnes", UnitFamily::Mass, Rational(1000000)},
      {"ml", "millilitre", "millilitres", UnitFamily::Volume, Rational(1, 1000)},
      {"cl", "centilitre", "centilitres", UnitFamily::Volume, Rational(1, 100)},
      {"l", "litre", "litres", UnitFamily::Volume, Rational(1)},
      {"s", "second", "seconds", UnitFamily::Time, Rational(1)},
      {"min", "minute", "minutes", UnitFamily::Time, Rational(60)},
      {"h", "hour", "hours", UnitFamily::Time, Rational(3600)},
      {"d", "day", "days", UnitFamily::Time, Rational(86400)},
      {"wk", "week", "weeks", UnitFamily::Time, Rational(604800)},
  };
  return table;
}

const UnitInfo& unit_named(std::string_view name) {
  for (const auto& u : unit_table()) {
    if (u.symbol == name || u.singular == name || u.plural == name) return u;
  }
  throw InvalidInput("unknown unit: " + std::string(name));
}

Rational convert_units(const Rational& magnitude, const UnitInfo& from, const UnitInfo& to) {
  if (from.family != to.family) {
    throw InvalidInput("cannot convert " + std::string(from.plural) + " to " + std::string(to.plural));
  }
  return magnitude * from.scale / to.scale;
}

// ---------------------------------------------------------------------------

ClockTime ClockTime::parse(std::string_view text) {
  auto colon = text.find(':');
  auto space = text.find(' ');
  if (colon == std::string_view::npos || space == std::string_view::npos || space != colon + 3) {
    throw ParseError("malformed clock time '" + std::string(text) + "'");
  }
  ClockTime t;
  try {
    t.hour = std::stoi(std::string(text.substr(0, colon)));
    t.minute = std::stoi(std::string(text.substr(colon + 1, 2)));
  } catch (const std::exception&) {
    throw ParseError("malformed clock time '" + std::string(text) + "'");
  }
  std::string_view mer = text.substr(space + 1);
  if (mer == "AM") {
    t.pm = false;
  } else if (mer == "PM") {
    t.pm = true;
  } else {
    throw ParseError("malformed clock time '" + std::string(text) + "'");
  }
  if (t.hour < 1 || t.hour > 12 || t.minute < 0 || t.minute > 59) {
    throw ParseError("clock time out of range '" + std::string(text) + "'");
  }
  return t;
}

ClockTime ClockTime::from_minutes(long m) {
  m = ((m % 1440) + 1440) % 1440;
  ClockTime t;
  long h24 = m / 60;
  t.minute = static_cast<int>(m % 60);
  t.pm = h24 >= 12;
  t.hour = static_cast<int>(h24 % 12 == 0 ? 12 : h24 % 12);
  return t;
}

long ClockTime::minutes_since_midnight() const { return (hour % 12 + (pm ? 12 : 0)) * 60L + minute; }

std::string ClockTime::to_string() const {
  std::string mm = std::to_string(minute);
  if (mm.size() == 1) mm = "0" + mm;
  return std::to_string(hour) + ":" + mm + (pm ? " PM" : " AM");
}

long time_between(const ClockTime& t1, const ClockTime& t2) {
  return ((t2.minutes_since_midnight() - t1.minutes_since_midnight()) % 1440 + 1440) % 1440;
}

ClockTime add_minutes(const ClockTime& t, long minutes) {
  return ClockTime::from_minutes(t.minutes_since_midnight() + minutes);
}

// ---------------------------------------------------------------------------

LetterBag bag_from_letters(std::string_view letters) {
  LetterBag bag;
  for (char c : letters) ++bag[c];
  return bag;
}

std::string format_bag(const LetterBag& bag) {
  std::string out = "{";
  for (const auto& [letter, count] : bag) {
    if (out.size() > 1) out += ", ";
    out += letter;
    out += ": " + std::to_string(count);
  }
  return out + "}";
}

unsigned bag_size(const LetterBag& bag) {
  unsigned n = 0;
  for (const auto& [letter, count] : bag) n += count;
  return n;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return BigInt(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return BigInt(std::move(r));
}

Rational prob_sequence_swr(const LetterBag& bag, std::string_view seq) {
  LetterBag left = bag;
  unsigned total = bag_size(bag);
  if (seq.size() > total) throw InvalidInput("sequence longer than the bag");
  BigInt num(1), den(1);
  for (char c : seq) {
    auto it = left.find(c);
    if (it == left.end() || it->second == 0) return Rational(0);
    num *= BigInt(it->second);
    den *= BigInt(total);
    --it->second;
    --total;
  }
  return Rational(num, den);
}

Rational prob_level_set_swr(const LetterBag& bag, const std::map<char, unsigned>& counts) {
  unsigned total = bag_size(bag);
  unsigned k = 0;
  BigInt ways(1);
  for (const auto& [letter, want] : counts) {
    k += want;
    auto it = bag.find(letter);
    ways *= binomial(it == bag.end() ? 0 : it->second, want);
  }
  if (k > total) throw InvalidInput("sample larger than the bag");
  return Rational(ways, binomial(total, k));
}

}  // namespace mathgen
