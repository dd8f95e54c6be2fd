#include <gtest/gtest.h>

#include <random>

#include "tropbilevel/errors.hpp"
#include "tropbilevel/trop_core.hpp"

using namespace tropbilevel;

namespace {
const TropScalar kBot = TropScalar::bottom();

TropScalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-6, 6);
  int v = d(rng);
  if (v == -6) return kBot;
  return TropScalar(Rational(v, 2));
}
}  // namespace

TEST(TropScalar, Neutrals) {
  EXPECT_EQ(oplus(kBot, TropScalar(3)), TropScalar(3));
  EXPECT_TRUE(otimes(kBot, TropScalar(3)).is_bottom());
  EXPECT_EQ(otimes(TropScalar::one(), TropScalar(-2)), TropScalar(-2));
  EXPECT_LT(kBot, TropScalar(-1000000));
  EXPECT_THROW(kBot.value(), std::logic_error);
}

TEST(TropScalar, Parse) {
  EXPECT_TRUE(TropScalar::parse("-inf").is_bottom());
  EXPECT_EQ(TropScalar::parse("-0.1"), TropScalar(Rational(-1, 10)));
  EXPECT_EQ(TropScalar::parse("-0.1").str(), "-0.1");
  EXPECT_EQ(kBot.str(), "-inf");
}

TEST(Tdot, Examples) {
  EXPECT_EQ(tdot({1, 2}, {2, 1}), TropScalar(3));
  EXPECT_EQ(tdot({0, 0}, {-3, -1}), TropScalar(-1));
  EXPECT_EQ(tdot({kBot, 0}, {5, 1}), TropScalar(1));
  EXPECT_TRUE(tdot({kBot, 0}, {5, kBot}).is_bottom());
  EXPECT_THROW(tdot({1, 2}, {1}), DimensionError);
}

TEST(Tcomb, Examples) {
  const std::vector<TropVector> g{{1, 1}, {0, 0}, {2, -1}};
  EXPECT_EQ(tcomb(g, std::vector<TropScalar>{0, 0, 0}), (TropVector{2, 1}));
  EXPECT_EQ(tcomb(g, std::vector<TropScalar>{0, kBot, kBot}), (TropVector{1, 1}));
  EXPECT_EQ(tcomb(g, std::vector<TropScalar>{0, -1, -3}), (TropVector{1, 1}));
  EXPECT_THROW(tcomb(g, std::vector<TropScalar>{-1, -1, -3}), PreconditionError);
  EXPECT_THROW(tcomb(g, std::vector<TropScalar>{0, 0}), DimensionError);
}

TEST(Dominates, Examples) {
  EXPECT_TRUE(dominates({1, 1}, {0, 0}));
  EXPECT_FALSE(dominates({2, -1}, {0, 0}));
  EXPECT_TRUE(dominates({0, 0}, {kBot, 0}));
  EXPECT_THROW(dominates({0, 0}, {0}), DimensionError);
}

TEST(TropVector, LexOrderBottomFirst) {
  EXPECT_LT((TropVector{kBot, 5}), (TropVector{-9, 0}));
  EXPECT_LT((TropVector{0, 0}), (TropVector{0, 1}));
}

TEST(Properties, SemiringLaws) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 2000; ++k) {
    TropScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    EXPECT_EQ(oplus(a, a), a);
    EXPECT_EQ(oplus(a, b), oplus(b, a));
    EXPECT_EQ(oplus(oplus(a, b), c), oplus(a, oplus(b, c)));
    EXPECT_EQ(otimes(otimes(a, b), c), otimes(a, otimes(b, c)));
    EXPECT_EQ(otimes(a, oplus(b, c)), oplus(otimes(a, b), otimes(a, c)));
  }
}

TEST(Properties, TdotMonotone) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 1000; ++k) {
    std::vector<TropScalar> c, d, x;
    for (int i = 0; i < 3; ++i) {
      c.push_back(random_scalar(rng));
      d.push_back(oplus(c.back(), random_scalar(rng)));
      x.push_back(random_scalar(rng));
    }
    EXPECT_LE(tdot(TropVector(c), TropVector(x)), tdot(TropVector(d), TropVector(x)));
  }
}

TEST(Properties, TcombIsMaxOfScaled) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) {
    std::vector<TropVector> gens;
    std::vector<TropScalar> lam;
    for (int i = 0; i < 3; ++i) {
      gens.emplace_back(std::vector<TropScalar>{random_scalar(rng), random_scalar(rng)});
      lam.push_back(i == 0 ? TropScalar(0) : otimes(random_scalar(rng), TropScalar(-4)));
    }
    TropVector out = tcomb(gens, lam);
    TropVector acc = TropVector::filled(2, kBot);
    for (int i = 0; i < 3; ++i) {
      EXPECT_TRUE(dominates(out, tscale(lam[i], gens[i])));
      acc = tmax(acc, tscale(lam[i], gens[i]));
    }
    EXPECT_EQ(out, acc);
  }
}
