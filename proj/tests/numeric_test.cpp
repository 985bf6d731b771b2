#include <gtest/gtest.h>

#include <cmath>

#include "mathgen/errors.hpp"
#include "mathgen/number_theory.hpp"
#include "mathgen/numeric.hpp"
#include "mathgen/sampler.hpp"

using namespace mathgen;

namespace {

BigInt B(long long v) { return BigInt(v); }

std::vector<PrimePower> naive_factor(long long n) {
  std::vector<PrimePower> out;
  for (long long p = 2; p * p <= n; ++p) {
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) out.push_back({B(p), k});
  }
  if (n > 1) out.push_back({B(n), 1});
  return out;
}

}  // namespace

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd(B(12), B(18)), B(6));
  EXPECT_EQ(gcd(B(0), B(7)), B(7));
  EXPECT_EQ(gcd(B(252), B(198)), B(18));
  EXPECT_EQ(gcd(B(0), B(0)), B(0));
  EXPECT_EQ(gcd(B(-12), B(18)), B(6));
}

TEST(Lcm, Examples) {
  EXPECT_EQ(lcm(B(4), B(6)), B(12));
  EXPECT_EQ(lcm(B(1), B(-35)), B(35));
  EXPECT_EQ(lcm(B(21), B(6)), B(42));
}

TEST(Gcd, TimesLcmIsProduct) {
  RandomStream rng(11);
  for (int i = 0; i < 2000; ++i) {
    BigInt a = rng.range(B(1), B(1000000)), b = rng.range(B(1), B(1000000));
    EXPECT_EQ(gcd(a, b) * lcm(a, b), a * b);
  }
}

TEST(IsPrime, Examples) {
  EXPECT_TRUE(is_prime(B(2)));
  EXPECT_FALSE(is_prime(B(235232673)));
  EXPECT_TRUE(is_prime(B(317453)));
  EXPECT_FALSE(is_prime(B(1)));
  EXPECT_FALSE(is_prime(B(0)));
  EXPECT_FALSE(is_prime(B(-7)));
  // Strong pseudoprime to bases 2..37 but not 41.
  EXPECT_FALSE(is_prime(BigInt::parse("3825123056546413051")));
  EXPECT_TRUE(is_prime(BigInt::parse("1000000000000000003")));
  EXPECT_FALSE(is_prime(BigInt::parse("1000000000000000001")));
}

TEST(IsPrime, MatchesSieveBelow100000) {
  const int n = 100000;
  std::vector<bool> composite(n + 1, false);
  for (int i = 2; i * i <= n; ++i) {
    if (!composite[i]) {
      for (int j = i * i; j <= n; j += i) composite[j] = true;
    }
  }
  for (int i = 2; i <= n; ++i) ASSERT_EQ(is_prime(B(i)), !composite[i]) << i;
}

TEST(PrimeFactorize, Examples) {
  std::vector<PrimePower> big = {{B(3), 1}, {B(13), 1}, {B(19), 1}, {B(317453), 1}};
  EXPECT_EQ(prime_factorize(B(235232673)), big);
  std::vector<PrimePower> small = {{B(2), 2}, {B(7), 1}, {B(11), 2}, {B(19), 1}};
  EXPECT_EQ(prime_factorize(B(64372)), small);
  EXPECT_EQ(prime_factorize(B(2)), (std::vector<PrimePower>{{B(2), 1}}));
  EXPECT_THROW(prime_factorize(B(1)), InvalidInput);
  EXPECT_EQ(format_prime_factors(prime_factorize(B(235232673))), "3, 13, 19, 317453");
}

TEST(PrimeFactorize, MatchesTrialDivisionAndMultipliesBack) {
  RandomStream rng(5);
  for (int i = 0; i < 3000; ++i) {
    long long n = rng.range(2L, 5000000L);
    auto f = prime_factorize(B(n));
    EXPECT_EQ(f, naive_factor(n)) << n;
    BigInt prod(1);
    for (const auto& pp : f) {
      EXPECT_TRUE(is_prime(pp.prime));
      prod *= pp.prime.pow(pp.multiplicity);
    }
    EXPECT_EQ(prod, B(n));
  }
}

TEST(DivRemainder, Examples) {
  EXPECT_EQ(div_remainder(B(17), B(5)), (DivRem{B(3), B(2)}));
  EXPECT_EQ(div_remainder(B(0), B(9)), (DivRem{B(0), B(0)}));
  // Long division: 611 * 3685 = 2251535, leaving 255.
  EXPECT_EQ(div_remainder(B(2251790), B(611)), (DivRem{B(3685), B(255)}));
  EXPECT_EQ(div_remainder(B(-7), B(3)), (DivRem{B(-3), B(2)}));
  EXPECT_THROW(div_remainder(B(1), B(0)), InvalidInput);
}

TEST(DivRemainder, Identity) {
  RandomStream rng(3);
  for (int i = 0; i < 2000; ++i) {
    BigInt a = rng.range(B(-1000000), B(1000000)), b = rng.range(B(1), B(5000));
    DivRem d = div_remainder(a, b);
    EXPECT_EQ(d.quotient * b + d.remainder, a);
    EXPECT_GE(d.remainder, B(0));
    EXPECT_LT(d.remainder, b);
  }
}

TEST(NearestIntegerRoot, Examples) {
  EXPECT_EQ(nearest_integer_root(B(64), 2), B(8));
  EXPECT_EQ(nearest_integer_root(B(30), 3), B(3));
  EXPECT_EQ(nearest_integer_root(B(2), 2), B(1));
  EXPECT_EQ(nearest_integer_root(B(0), 5), B(0));
}

TEST(NearestIntegerRoot, NoCloserInteger) {
  RandomStream rng(8);
  for (int i = 0; i < 3000; ++i) {
    long long n = rng.range(0L, 100000000L);
    unsigned k = static_cast<unsigned>(rng.range(2, 5));
    long double real = std::pow(static_cast<long double>(n), 1.0L / k);
    BigInt m = nearest_integer_root(B(n), k);
    EXPECT_LE(std::fabs(static_cast<long double>(m.to_int64()) - real), 0.5L + 1e-9L) << n << " " << k;
  }
}

TEST(BaseConvert, Examples) {
  EXPECT_EQ(base_convert(BaseNumeral::parse("1011001", 2), 16).to_string(), "59");
  EXPECT_EQ(base_convert(BaseNumeral::parse("0", 7), 3).to_string(), "0");
  EXPECT_EQ(base_convert(BaseNumeral::parse("ff", 16), 10).to_string(), "255");
  EXPECT_EQ(base_convert(BaseNumeral::parse("-ff", 16), 2).to_string(), "-11111111");
  EXPECT_THROW(BaseNumeral::parse("12", 2), ParseError);
  EXPECT_THROW(base_convert(BaseNumeral::parse("1", 2), 17), InvalidInput);
}

TEST(BaseConvert, RoundTrip) {
  RandomStream rng(21);
  for (int i = 0; i < 2000; ++i) {
    BigInt v = rng.range(B(-100000000), B(100000000));
    int r1 = static_cast<int>(rng.range(2, 16)), r2 = static_cast<int>(rng.range(2, 16));
    BaseNumeral x = BaseNumeral::from_value(v, r1);
    BaseNumeral y = base_convert(x, r2);
    EXPECT_EQ(y.value(), v);
    EXPECT_EQ(base_convert(y, r1), x);
  }
}

TEST(PlaceValue, Examples) {
  EXPECT_EQ(place_value(ExactDecimal::parse("3585792"), place_from_name("tens")), 9);
  EXPECT_EQ(place_value(ExactDecimal::parse("7"), place_from_name("units")), 7);
  // 432.1058: tenths 1, hundredths 0, thousandths 5, ten-thousandths 8.
  EXPECT_EQ(place_value(ExactDecimal::parse("432.1058"), place_from_name("thousandths")), 5);
  EXPECT_EQ(place_value(ExactDecimal::parse("432.1058"), place_from_name("ten-thousandths")), 8);
  EXPECT_EQ(place_value(ExactDecimal::parse("12"), 5), 0);
}

TEST(RoundToPlace, Examples) {
  EXPECT_EQ(round_to_place(ExactDecimal::parse("432.1058"), 3).to_string(), "432.106");
  EXPECT_EQ(round_to_place(ExactDecimal::parse("2.5"), 0).to_string(), "3");
  EXPECT_EQ(round_to_place(ExactDecimal::parse("-2.5"), 0).to_string(), "-3");
  EXPECT_EQ(round_to_place(ExactDecimal::parse("2.5"), 0, HalfRule::ToEven).to_string(), "2");
  EXPECT_EQ(round_to_place(ExactDecimal::parse("-0.0004"), 3).to_string(), "0");
  EXPECT_EQ(round_to_place(ExactDecimal::parse("-5142212"), -2).to_string(), "-5142200");
}

TEST(IsFactor, Examples) {
  EXPECT_TRUE(is_factor(B(15), B(60)));
  EXPECT_FALSE(is_factor(B(2), B(3)));
  EXPECT_TRUE(is_factor(B(2), B(2)));
  EXPECT_THROW(is_factor(B(0), B(5)), InvalidInput);
}

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(B(6), B(-4)).to_string(), "-3/2");
  EXPECT_EQ(Rational(B(0), B(-4)).to_string(), "0");
  EXPECT_EQ(Rational::parse("-0.25"), Rational(B(-1), B(4)));
  EXPECT_EQ(Rational::parse("-139/4").to_string(), "-139/4");
  EXPECT_THROW(Rational(B(1), B(0)), InvalidInput);
}

TEST(ExactDecimal, ParseAndArithmetic) {
  ExactDecimal d = ExactDecimal::parse("-841469015.544");
  EXPECT_EQ(d.unscaled(), B(-841469015544));
  EXPECT_EQ(d.scale(), 3u);
  EXPECT_EQ((ExactDecimal::parse("-841880142.544") + ExactDecimal::parse("411127")).to_string(), "-841469015.544");
  EXPECT_EQ(ExactDecimal::parse("1.50").to_string(), "1.5");
  EXPECT_EQ(ExactDecimal::parse("-0.0").to_string(), "0");
  EXPECT_FALSE(ExactDecimal::from_rational(Rational(B(1), B(3))).has_value());
}

TEST(BigInt, TruncatingDivisionAndParse) {
  EXPECT_EQ(B(-7) / B(2), B(-3));
  EXPECT_EQ(B(-7) % B(2), B(-1));
  EXPECT_EQ(floor_div(B(-7), B(2)), B(-4));
  EXPECT_EQ(BigInt::parse("-30a7ba0", 13).to_string(13), "-30a7ba0");
  EXPECT_THROW(BigInt::parse("12x"), ParseError);
  EXPECT_EQ(BigInt(0).digit_count(), 1u);
}
