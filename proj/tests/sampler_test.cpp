#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "mathgen/errors.hpp"
#include "mathgen/sampler.hpp"

using namespace mathgen;

TEST(DrawFromSet, ForcedDrawAddsNothing) {
  RandomStream rng(1);
  EntropyBudget b(3.0);
  EXPECT_EQ(draw_from_set(rng, b, 1), 0u);
  EXPECT_DOUBLE_EQ(b.credit(), 0.0);
  EXPECT_FALSE(b.satisfied());
}

TEST(DrawFromSet, CreditIsAdditive) {
  RandomStream rng(1);
  EntropyBudget b(5.0);
  draw_from_set(rng, b, 100);
  draw_from_set(rng, b, 1000);
  EXPECT_NEAR(b.credit(), 5.0, 1e-12);
  EXPECT_TRUE(b.satisfied());
  EXPECT_TRUE(certifies(b.log(), 5.0));
  EXPECT_FALSE(certifies(b.log(), 5.0001));
  EXPECT_FALSE(certifies(b.log(), 6.0));
}

TEST(DrawFromSet, TenEightTimesMeetsTestAlpha) {
  RandomStream rng(2);
  EntropyBudget b(8.0);
  for (int i = 0; i < 7; ++i) draw_from_set(rng, b, 10);
  EXPECT_FALSE(b.satisfied());
  draw_from_set(rng, b, 10);
  EXPECT_TRUE(b.satisfied());
  EXPECT_NEAR(b.credit(), 8.0, 1e-12);
}

TEST(DrawFromSet, IntegerAlphaIsExact) {
  // 99999999 < 10^8 must not certify even though its log10 rounds near 8.
  std::vector<DrawRecord> log = {{BigInt(99999999), "x"}};
  EXPECT_FALSE(certifies(log, 8.0));
  log = {{BigInt(100000000), "x"}};
  EXPECT_TRUE(certifies(log, 8.0));
}

TEST(SampleInteger, FirstPositive) {
  RandomStream rng(3);
  EntropyBudget b;
  std::set<long> seen;
  for (int i = 0; i < 500; ++i) {
    EntropyBudget one;
    BigInt v = sample_integer(rng, one, FirstPositive{BigInt(10)});
    EXPECT_GE(v, BigInt(1));
    EXPECT_LE(v, BigInt(10));
    EXPECT_NEAR(one.credit(), 1.0, 1e-12);
    seen.insert(v.to_int64());
  }
  EXPECT_EQ(seen.size(), 10u);
}

TEST(SampleInteger, CoprimeTo) {
  RandomStream rng(4);
  std::set<long> seen;
  for (int i = 0; i < 400; ++i) {
    EntropyBudget one;
    BigInt v = sample_integer(rng, one, CoprimeTo{BigInt(6), BigInt(1), BigInt(12)});
    seen.insert(v.to_int64());
    EXPECT_NEAR(one.credit(), std::log10(4.0), 1e-12);
  }
  EXPECT_EQ(seen, (std::set<long>{1, 5, 7, 11}));
  EXPECT_EQ(constraint_size(CoprimeTo{BigInt(6), BigInt(1), BigInt(12)}), BigInt(4));
}

TEST(SampleInteger, EmptyOrDegenerateSetsThrow) {
  RandomStream rng(5);
  EntropyBudget b;
  EXPECT_THROW(sample_integer(rng, b, Symmetric{BigInt(0)}), InvalidInput);
  EXPECT_THROW(sample_integer(rng, b, Interval{BigInt(3), BigInt(2)}), InvalidInput);
  EXPECT_THROW(sample_integer(rng, b, Nonzero{BigInt(0), BigInt(0)}), InvalidInput);
}

TEST(SampleInteger, NonzeroAndSymmetricSizes) {
  EXPECT_EQ(constraint_size(Symmetric{BigInt(5)}), BigInt(11));
  EXPECT_EQ(constraint_size(Nonzero{BigInt(-4), BigInt(4)}), BigInt(8));
  EXPECT_EQ(constraint_size(Nonzero{BigInt(1), BigInt(4)}), BigInt(4));
  RandomStream rng(6);
  EntropyBudget b;
  for (int i = 0; i < 500; ++i) EXPECT_FALSE(sample_integer(rng, b, Nonzero{BigInt(-4), BigInt(4)}).is_zero());
}

TEST(Allocate, Examples) {
  auto even = allocate(EntropyBudget(8.0), {1, 1});
  ASSERT_EQ(even.size(), 2u);
  EXPECT_DOUBLE_EQ(even[0].target(), 4.0);
  EXPECT_DOUBLE_EQ(even[1].target(), 4.0);
  auto skew = allocate(EntropyBudget(8.0), {3, 1});
  EXPECT_DOUBLE_EQ(skew[0].target(), 6.0);
  EXPECT_DOUBLE_EQ(skew[1].target(), 2.0);
  auto zero = allocate(EntropyBudget(0.0), {1, 2});
  EXPECT_DOUBLE_EQ(zero[0].target(), 0.0);
  EXPECT_TRUE(zero[0].satisfied());
}

TEST(Allocate, ChildrenAbsorbIntoParent) {
  RandomStream rng(7);
  EntropyBudget parent(6.0);
  auto kids = allocate(parent, {1, 2});
  for (auto& k : kids) sample_integer(rng, k, FirstPositive{set_size_for(k.target())});
  for (const auto& k : kids) parent.absorb(k);
  EXPECT_TRUE(parent.satisfied());
}

TEST(SetSize, Sizing) {
  EXPECT_EQ(set_size_for(0.0), BigInt(1));
  EXPECT_EQ(set_size_for(3.0), BigInt(1000));
  EXPECT_EQ(set_size_for(0.5), BigInt(4));
  EXPECT_EQ(symmetric_width_for(1.0), BigInt(5));
  EXPECT_EQ(symmetric_width_for(0.1), BigInt(1));
}

TEST(DrawAlpha, Policy) {
  AlphaPolicy policy;
  RandomStream rng(9);
  EXPECT_DOUBLE_EQ(draw_alpha(policy, Split::Interpolate, rng), 8.0);
  EXPECT_DOUBLE_EQ(draw_alpha(policy, Split::Extrapolate, rng), 8.0);
  EXPECT_DOUBLE_EQ(draw_alpha(policy, Split::Extrapolate, rng, 5.5), 5.5);
  double sum = 0, lo = 100, hi = 0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    double a = draw_alpha(policy, Split::Train, rng);
    sum += a;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  EXPECT_NEAR(sum / n, 6.5, 0.02);
  EXPECT_GE(lo, 3.0);
  EXPECT_LE(hi, 10.0);
}

TEST(RandomStream, DeterministicAndSplittable) {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  RandomStream c1 = RandomStream(42).child("x"), c2 = RandomStream(42).child("y");
  EXPECT_NE(c1.next_u64(), c2.next_u64());
  EXPECT_NE(RandomStream(42).child(0).next_u64(), RandomStream(42).child(1).next_u64());
  // Children do not depend on how much the parent has been used.
  RandomStream p(42);
  p.next_u64();
  EXPECT_EQ(p.child("x").next_u64(), RandomStream(42).child("x").next_u64());
}

TEST(RandomStream, BelowIsUniform) {
  RandomStream rng(123);
  const int k = 7, n = 70000;
  std::vector<int> counts(k, 0);
  for (int i = 0; i < n; ++i) ++counts[rng.below(k)];
  double chi = 0, expect = static_cast<double>(n) / k;
  for (int c : counts) chi += (c - expect) * (c - expect) / expect;
  // 6 degrees of freedom; 22.46 is the 0.999 quantile.
  EXPECT_LT(chi, 22.46);
  BigInt big = BigInt::pow10(30);
  for (int i = 0; i < 100; ++i) {
    BigInt v = rng.below(big);
    EXPECT_GE(v, BigInt(0));
    EXPECT_LT(v, big);
  }
}
