#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/random_instances.hpp"
#include "tropbilevel/errors.hpp"
#include "tropbilevel/oracle.hpp"
#include "tropbilevel/trop_poly.hpp"

using namespace tropbilevel;
using testsupport::reference_tp1;
using testsupport::reference_tp2;

namespace {
const TropScalar kBot = TropScalar::bottom();
}

TEST(Contains, Examples) {
  auto tp2 = reference_tp2();
  EXPECT_TRUE(contains(tp2, {2, 1}).member);
  auto m = contains(tp2, {Rational(19, 10), Rational(9, 10)});
  ASSERT_TRUE(m.member);
  EXPECT_EQ(m.coefficients, (std::vector<TropScalar>{Rational(-1, 10), 0, Rational(-1, 10)}));
  auto r = contains(TropPolytopeV({{1, 1}, {2, -1}}), {0, 0});
  EXPECT_FALSE(r.member);
  EXPECT_EQ(r.coefficients, (std::vector<TropScalar>{-1, -2}));
  EXPECT_THROW(contains(tp2, {0}), DimensionError);
}

TEST(Contains, BottomConventions) {
  TropPolytopeV p({{0, kBot}, {kBot, 0}});
  EXPECT_TRUE(contains(p, {0, -3}).member);
  EXPECT_TRUE(contains(p, {kBot, 0}).member);
  EXPECT_FALSE(contains(p, {kBot, kBot}).member);
  EXPECT_FALSE(contains(p, {1, -3}).member);
}

TEST(ContainsH, Examples) {
  TropPolyhedronH h{2, {{{0, kBot}, {kBot, 0}}}};
  EXPECT_TRUE(contains_h(h, {0, 1}));
  EXPECT_FALSE(contains_h(h, {1, 0}));
  EXPECT_TRUE(contains_h(TropPolyhedronH{2, {}}, {7, -7}));
  EXPECT_THROW(contains_h(h, {0}), DimensionError);
}

TEST(GreatestPoint, Examples) {
  EXPECT_EQ(greatest_point(reference_tp2()), (TropVector{2, 1}));
  EXPECT_EQ(greatest_point(reference_tp1()), (TropVector{-1, 0}));
  EXPECT_EQ(greatest_point(TropPolytopeV({{5, kBot}})), (TropVector{5, kBot}));
}

TEST(MinimalPoints, Examples) {
  EXPECT_EQ(minimal_points(reference_tp2()), (std::vector<TropVector>{{0, 0}, {2, -1}}));
  // (-1, 0) dominates (-3, -1); (-3, -1) and (-2, -3) are incomparable.
  EXPECT_EQ(minimal_points(reference_tp1()), (std::vector<TropVector>{{-3, -1}, {-2, -3}}));
  EXPECT_EQ(minimal_points(TropPolytopeV({{4, 4}})), (std::vector<TropVector>{{4, 4}}));
  EXPECT_EQ(minimal_points(TropPolytopeV({{1, 1}, {1, 1}})).size(), 1u);
}

TEST(ExtremeGenerators, Examples) {
  auto e = extreme_generators(TropPolytopeV({{1, 1}, {0, 0}, {2, -1}, {1, 0}}));
  EXPECT_EQ(e.generators(), (std::vector<TropVector>{{1, 1}, {0, 0}, {2, -1}}));
  EXPECT_EQ(extreme_generators(reference_tp2()).size(), 3u);
  EXPECT_EQ(extreme_generators(TropPolytopeV({{3, 2}})).size(), 1u);
}

TEST(Phi, Examples) {
  auto tp2 = reference_tp2();
  auto a = phi_and_argmin(tp2, {0, 0});
  EXPECT_EQ(a.value, TropScalar(0));
  EXPECT_EQ(a.argmin, (TropVector{0, 0}));
  auto b = phi_and_argmin(tp2, {-10, 0});
  EXPECT_EQ(b.value, TropScalar(-1));
  EXPECT_EQ(b.argmin, (TropVector{2, -1}));
  auto c = phi_and_argmin(tp2, {-3, -1});
  EXPECT_EQ(c.value, TropScalar(-1));
  EXPECT_EQ(c.argmin, (TropVector{0, 0}));
  EXPECT_THROW(phi_and_argmin(tp2, {0}), DimensionError);
}

TEST(Properties, MembershipSoundness) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 40; ++k) {
    auto p = testsupport::random_polytope(rng, 3, 4);
    for (int t = 0; t < 100; ++t) {
      auto x = testsupport::random_int_vector(rng, 3, -6, 6);
      auto m = contains(p, x);
      if (!m.member) continue;
      EXPECT_EQ(tcomb(p.generators(), m.coefficients), x);
      EXPECT_EQ(*std::max_element(m.coefficients.begin(), m.coefficients.end()), TropScalar(0));
    }
    for (const auto& s : oracle::sample_polytope(p, {1, -3, true})) EXPECT_TRUE(contains(p, s).member) << s;
  }
}

TEST(Properties, GreatestPointDominatesSamples) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    auto p = testsupport::random_polytope(rng, 3, 4);
    auto g = greatest_point(p);
    EXPECT_TRUE(contains(p, g).member);
    auto samples = oracle::sample_polytope(p, {Rational(1, 2), -4, true});
    for (std::size_t i = 0; i < std::min<std::size_t>(samples.size(), 1000); ++i)
      EXPECT_TRUE(dominates(g, samples[i]));
  }
}

TEST(Properties, MinimalPointsStructure) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 50; ++k) {
    auto p = testsupport::random_polytope(rng, 3, 5);
    auto mins = minimal_points(p);
    ASSERT_FALSE(mins.empty());
    for (const auto& a : mins) {
      EXPECT_TRUE(contains(p, a).member);
      for (const auto& b : mins)
        if (a != b) EXPECT_FALSE(dominates(a, b));
    }
    for (const auto& g : p.generators())
      EXPECT_TRUE(std::any_of(mins.begin(), mins.end(), [&](const TropVector& m) { return dominates(g, m); }));
    // Grid oracle: no sample lies strictly below a minimal point.
    for (const auto& s : oracle::sample_polytope(p, {1, -3, true}))
      for (const auto& m : mins)
        if (dominates(m, s)) EXPECT_EQ(m, s);
  }
}

TEST(Properties, MinimalPointsSurviveExtremeFilter) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    auto p = testsupport::random_polytope(rng, 3, 5);
    const auto kept = extreme_generators(p).generators();
    for (const auto& m : minimal_points(p)) EXPECT_NE(std::find(kept.begin(), kept.end(), m), kept.end());
    // Irredundant: no kept generator lies in the hull of the others.
    for (std::size_t i = 0; i < kept.size() && kept.size() > 1; ++i) {
      std::vector<TropVector> others;
      for (std::size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      EXPECT_FALSE(contains(TropPolytopeV(others), kept[i]).member);
    }
  }
}

TEST(Properties, PhiIsMinOverSamples) {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 10; ++k) {
    auto p = testsupport::random_polytope(rng, 2, 4);
    auto samples = oracle::sample_polytope(p, {1, -3, true});
    auto mins = minimal_points(p);
    for (int t = 0; t < 200; ++t) {
      auto x = testsupport::random_int_vector(rng, 2, -8, 8);
      auto phi = phi_and_argmin(p, x);
      for (const auto& s : samples) EXPECT_LE(phi.value, tdot(x, s));
      EXPECT_TRUE(std::any_of(mins.begin(), mins.end(), [&](const TropVector& m) { return tdot(x, m) == phi.value; }));
      // Extra hull points do not change the minimum.
      auto extended = mins;
      extended.push_back(greatest_point(p));
      extended.push_back(samples[t % samples.size()]);
      TropScalar scan = tdot(x, extended.front());
      for (const auto& e : extended) scan = std::min(scan, tdot(x, e));
      EXPECT_EQ(scan, phi.value);
    }
  }
}
