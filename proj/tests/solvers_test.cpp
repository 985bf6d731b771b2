#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "mathgen/errors.hpp"
#include "mathgen/generators.hpp"
#include "mathgen/solvers.hpp"

using namespace mathgen;

namespace {

Rational R(long p, long q = 1) { return Rational(BigInt(p), BigInt(q)); }
NumberToken N(const char* s) { return NumberToken::from_text(s); }

std::vector<std::string> texts(const std::vector<NumberToken>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.text);
  return out;
}

}  // namespace

TEST(SolveLinear1d, Examples) {
  EXPECT_EQ(solve_linear_1d(parse_equation("2*(x - 10) + 3 = 17*x + 10"), 'x'), R(-9, 5));
  EXPECT_EQ(solve_linear_1d(parse_equation("7*(x + 2) = 7"), 'x'), R(-1));
  EXPECT_EQ(solve_linear_1d(parse_equation("x = 5"), 'x'), R(5));
  EXPECT_THROW(solve_linear_1d(parse_equation("x + 1 = x"), 'x'), ContractViolation);
  EXPECT_THROW(solve_linear_1d(parse_equation("x**2 = 4"), 'x'), ContractViolation);
}

TEST(SolveLinear2d, Examples) {
  LinearSystem2 s1{R(-42), R(27), R(130), R(4), R(-1167), R(372), 'r', 'c'};
  EXPECT_EQ(solve_linear_2d(s1, 'r'), R(4));
  EXPECT_EQ(solve_linear_2d(s1, 'c'), R(-37));
  LinearSystem2 s2{R(5), R(2), R(4), R(-3), R(11), R(18), 'x', 'y'};
  EXPECT_EQ(solve_linear_2d(s2, 'x'), R(3));
  LinearSystem2 s3{R(1), R(1), R(1), R(-1), R(0), R(0), 'x', 'y'};
  EXPECT_EQ(solve_linear_2d(s3, 'x'), R(0));
  LinearSystem2 singular{R(1), R(2), R(2), R(4), R(3), R(6), 'x', 'y'};
  EXPECT_THROW(solve_linear_2d(singular, 'x'), ContractViolation);
}

TEST(SolveLinear2d, ReadsSystemFromText) {
  auto sys = linear_system_from(parse_equation("-42*r + 27*c = -1167"), parse_equation("130*r + 4*c = 372"), 'r', 'c');
  EXPECT_EQ(solve_linear_2d(sys, 'r'), R(4));
}

TEST(FitSequence, Examples) {
  auto a = fit_sequence({BigInt(2), BigInt(6), BigInt(12), BigInt(20)}, 'n');
  EXPECT_EQ(format(a.generator), "n**2 + n");
  EXPECT_EQ(a.next_term(), BigInt(30));
  auto b = fit_sequence({BigInt(3), BigInt(9), BigInt(15), BigInt(21), BigInt(27)}, 'n');
  EXPECT_EQ(format(b.generator), "6*n - 3");
  EXPECT_EQ(b.next_term(), BigInt(33));
  auto c = fit_sequence({BigInt(5), BigInt(5), BigInt(5)}, 'n');
  EXPECT_EQ(format(c.generator), "5");
  EXPECT_EQ(c.degree(), 0u);
}

TEST(FitSequence, RecoversRandomCubics) {
  RandomStream rng(77);
  EntropyBudget budget;
  for (int i = 0; i < 300; ++i) {
    unsigned d = static_cast<unsigned>(rng.range(0, 3));
    Polynomial g = random_polynomial('n', d, BigInt(50), rng, budget);
    std::vector<BigInt> terms;
    for (long k = 1; k <= static_cast<long>(d) + 2; ++k) terms.push_back(g.evaluate({{'n', R(k)}}).num());
    EXPECT_EQ(fit_sequence(terms, 'n').generator, g);
  }
}

TEST(ComparePair, Examples) {
  EXPECT_EQ(compare_pair(R(4, 37), R(7, 65)), std::strong_ordering::greater);
  EXPECT_EQ(compare_pair(R(3, 7), R(3, 7)), std::strong_ordering::equal);
  EXPECT_EQ(compare_pair(R(-555), R(-139, 4)), std::strong_ordering::less);
}

TEST(SortNumbers, Examples) {
  std::vector<NumberToken> xs = {N("-139/4"), N("40.8"), N("-555"), N("607")};
  EXPECT_EQ(texts(sort_numbers(xs)), (std::vector<std::string>{"-555", "-139/4", "40.8", "607"}));
  EXPECT_EQ(texts(sort_numbers(xs, false)), (std::vector<std::string>{"607", "40.8", "-139/4", "-555"}));
  EXPECT_TRUE(sort_numbers({}).empty());
  EXPECT_EQ(texts(sort_numbers({N("1"), N("1")})), (std::vector<std::string>{"1", "1"}));
  // Stable for equal values with different surfaces.
  EXPECT_EQ(texts(sort_numbers({N("0.5"), N("1/2")})), (std::vector<std::string>{"0.5", "1/2"}));
}

TEST(ClosestTo, Examples) {
  EXPECT_EQ(closest_to(R(0), {N("-2"), N("3"), N("5")}), 0u);
  EXPECT_EQ(closest_to(R(3), {N("-2"), N("3"), N("5")}), 1u);
  EXPECT_EQ(closest_to(R(1, 2), {N("0"), N("1")}), 0u);
  EXPECT_THROW(closest_to(R(0), {}), InvalidInput);
}

TEST(KthExtreme, Examples) {
  EXPECT_EQ(kth_extreme({N("3"), N("1"), N("2")}, 2, true).text, "2");
  EXPECT_EQ(kth_extreme({N("1"), N("2"), N("3")}, 1, false).text, "1");
  EXPECT_EQ(kth_extreme({N("-139/4"), N("40.8"), N("-555"), N("607")}, 2, false).text, "-139/4");
}

TEST(ConvertUnits, Examples) {
  EXPECT_EQ(convert_units(R(13, 8), unit_named("litre"), unit_named("millilitres")), R(1625));
  EXPECT_EQ(convert_units(R(1), unit_named("m"), unit_named("cm")), R(100));
  EXPECT_EQ(convert_units(R(90), unit_named("minutes"), unit_named("hours")), R(3, 2));
  EXPECT_THROW(convert_units(R(1), unit_named("kg"), unit_named("m")), InvalidInput);
}

TEST(ClockTime, Examples) {
  EXPECT_EQ(time_between(ClockTime::parse("8:05 PM"), ClockTime::parse("9:12 PM")), 67);
  EXPECT_EQ(time_between(ClockTime::parse("3:00 AM"), ClockTime::parse("3:00 AM")), 0);
  EXPECT_EQ(time_between(ClockTime::parse("11:50 AM"), ClockTime::parse("12:10 PM")), 20);
  EXPECT_EQ(add_minutes(ClockTime::parse("11:30 PM"), 45).to_string(), "12:15 AM");
  EXPECT_EQ(ClockTime::from_minutes(0).to_string(), "12:00 AM");
  EXPECT_EQ(ClockTime::from_minutes(12 * 60).to_string(), "12:00 PM");
  EXPECT_THROW(ClockTime::parse("13:00 PM"), ParseError);
}

TEST(ClockTime, AddThenMeasure) {
  for (long start = 0; start < 1440; start += 7) {
    for (long m = 0; m < 1440; m += 53) {
      ClockTime t = ClockTime::from_minutes(start);
      EXPECT_EQ(time_between(t, add_minutes(t, m)), m);
      EXPECT_EQ(ClockTime::parse(t.to_string()), t);
    }
  }
}

TEST(ProbSequence, Examples) {
  LetterBag bag = bag_from_letters("qqqkkklkqkkk");
  EXPECT_EQ(bag, (LetterBag{{'q', 4}, {'k', 7}, {'l', 1}}));
  EXPECT_EQ(prob_sequence_swr(bag, "qql"), R(1, 110));
  EXPECT_EQ(prob_sequence_swr(bag, "qqz"), R(0));
  EXPECT_EQ(prob_sequence_swr({{'a', 2}}, "aa"), R(1));
  EXPECT_EQ(format_bag(bag), "{k: 7, l: 1, q: 4}");
}

TEST(ProbLevelSet, Examples) {
  LetterBag bag{{'q', 4}, {'k', 7}, {'l', 1}};
  EXPECT_EQ(prob_level_set_swr(bag, {{'q', 2}, {'k', 1}}), R(21, 110));
  EXPECT_EQ(prob_level_set_swr(bag, {{'q', 4}, {'k', 7}, {'l', 1}}), R(1));
  EXPECT_EQ(prob_level_set_swr(bag, {{'l', 2}}), R(0));
}

TEST(ProbLevelSet, SumsOverOrderings) {
  // A level set is the disjoint union of its orderings.
  LetterBag bag{{'a', 3}, {'b', 2}, {'c', 4}};
  std::map<char, unsigned> counts{{'a', 2}, {'c', 1}};
  std::string seq = "aac";
  Rational total;
  std::sort(seq.begin(), seq.end());
  do {
    total += prob_sequence_swr(bag, seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  EXPECT_EQ(total, prob_level_set_swr(bag, counts));
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(12, 3), BigInt(220));
  EXPECT_EQ(binomial(5, 0), BigInt(1));
  EXPECT_EQ(binomial(3, 5), BigInt(0));
}
