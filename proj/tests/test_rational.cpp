#include <gtest/gtest.h>

#include "tropbilevel/rational.hpp"

using tropbilevel::parse_decimal;
using tropbilevel::Rational;

TEST(ParseDecimal, Forms) {
  EXPECT_EQ(parse_decimal("-0.1"), Rational(-1, 10));
  EXPECT_EQ(parse_decimal("+3"), Rational(3));
  EXPECT_EQ(parse_decimal("2.50"), Rational(5, 2));
  EXPECT_EQ(parse_decimal("1e-2"), Rational(1, 100));
  EXPECT_EQ(parse_decimal("1.5E3"), Rational(1500));
  EXPECT_EQ(parse_decimal("−" "4.25"), Rational(-17, 4));
  EXPECT_EQ(parse_decimal(".5"), Rational(1, 2));
}

TEST(ParseDecimal, Rejects) {
  for (const char* bad : {"", "-", "1.2.3", "abc", "1e", "0x10", "1 2", "--1"})
    EXPECT_THROW(parse_decimal(bad), std::invalid_argument) << bad;
}

TEST(ToString, TerminatingAndFraction) {
  EXPECT_EQ(tropbilevel::to_string(Rational(-1, 10)), "-0.1");
  EXPECT_EQ(tropbilevel::to_string(Rational(7)), "7");
  EXPECT_EQ(tropbilevel::to_string(Rational(3, 8)), "0.375");
  EXPECT_EQ(tropbilevel::to_string(Rational(1, 3)), "1/3");
  EXPECT_TRUE(tropbilevel::is_terminating_decimal(Rational(3, 40)));
  EXPECT_FALSE(tropbilevel::is_terminating_decimal(Rational(1, 6)));
}

TEST(ToString, RoundTrip) {
  for (int p = -50; p <= 50; p += 7)
    for (int q : {1, 2, 4, 5, 8, 20, 125}) {
      Rational r(p, q);
      r.canonicalize();
      EXPECT_EQ(parse_decimal(tropbilevel::to_string(r)), r);
    }
}
