#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "coarse/integer.hpp"

using coarse::Integer;

TEST(Integer, SmallArithmeticMatchesNative) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(-1000000, 1000000);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t a = dist(rng), b = dist(rng);
    EXPECT_EQ((Integer(a) + Integer(b)).to_int64(), a + b);
    EXPECT_EQ((Integer(a) - Integer(b)).to_int64(), a - b);
    EXPECT_EQ((Integer(a) * Integer(b)).to_int64(), a * b);
  }
}

TEST(Integer, OverflowPromotesAndDemotes) {
  Integer big = Integer(std::numeric_limits<std::int64_t>::max());
  Integer sum = big + Integer(1);
  EXPECT_FALSE(sum.is_small());
  EXPECT_EQ(sum.str(), "9223372036854775808");
  Integer back = sum - Integer(1);
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, big);
  Integer sq = big * big;
  EXPECT_EQ(sq.to_mpz(), mpz_class("85070591730234615847396907784232501249"));
  EXPECT_THROW((void)sq.to_int64(), std::overflow_error);
  Integer minv = Integer(std::numeric_limits<std::int64_t>::min());
  EXPECT_FALSE((-minv).is_small());
  EXPECT_EQ(-(-minv), minv);
}

TEST(Integer, FloorDivisionConventions) {
  auto dm = coarse::floor_divmod(Integer(-7), Integer(2));
  EXPECT_EQ(dm.quot, Integer(-4));
  EXPECT_EQ(dm.rem, Integer(1));
  EXPECT_EQ(coarse::trunc_div(Integer(-7), Integer(2)), Integer(-3));
  EXPECT_EQ(coarse::mod_nonneg(Integer(-7), Integer(-3)), Integer(2));
  EXPECT_THROW((void)coarse::exact_div(Integer(7), Integer(2)), std::logic_error);
}

TEST(Integer, ExtendedGcdBezoutIdentity) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> dist(-5000, 5000);
  for (int i = 0; i < 1000; ++i) {
    Integer a = dist(rng), b = dist(rng);
    auto e = coarse::ext_gcd(a, b);
    EXPECT_EQ(e.s * a + e.t * b, e.g);
    EXPECT_EQ(e.g, coarse::gcd(a, b));
    EXPECT_GE(e.g, Integer(0));
  }
}

TEST(Integer, ParseAndOrdering) {
  Integer x = Integer::parse("-123456789012345678901234567890");
  EXPECT_LT(x, Integer(0));
  EXPECT_EQ(x.str(), "-123456789012345678901234567890");
  EXPECT_LT(x, Integer(std::numeric_limits<std::int64_t>::min()));
  EXPECT_EQ(coarse::abs(x).str(), "123456789012345678901234567890");
}
