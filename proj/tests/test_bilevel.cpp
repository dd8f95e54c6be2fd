#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/random_instances.hpp"
#include "tropbilevel/bilevel.hpp"
#include "tropbilevel/errors.hpp"
#include "tropbilevel/oracle.hpp"

using namespace tropbilevel;
using testsupport::reference;

namespace {

const oracle::GridSpec kGrid{1, -4, true};

void expect_valid(const BilevelInstance& inst, const BilevelSolution& s) {
  EXPECT_TRUE(contains(inst.tp1, s.x).member) << s.x;
  EXPECT_TRUE(contains(inst.tp2, s.y).member) << s.y;
  EXPECT_TRUE(check_lower_optimality(inst, s.x, s.y));
  EXPECT_EQ(s.value, inst.objective(s.x, s.y));
}

}  // namespace

TEST(LowerOptimality, Reference) {
  auto inst = reference(Variant::MinMin);
  EXPECT_TRUE(check_lower_optimality(inst, {-3, -1}, {0, 0}));
  EXPECT_FALSE(check_lower_optimality(inst, {-3, -1}, {1, 1}));
  EXPECT_THROW(check_lower_optimality(inst, {9, 9}, {0, 0}), InfeasiblePoint);
  EXPECT_THROW(check_lower_optimality(inst, {-3, -1}, {5, 5}), InfeasiblePoint);
}

TEST(LowerOptimality, MaxLowerAcceptsGreatestPoint) {
  auto inst = reference(Variant::MinMax);
  EXPECT_TRUE(check_lower_optimality(inst, {-1, 0}, {2, 1}));
  EXPECT_FALSE(check_lower_optimality(inst, {-1, 0}, {0, 0}));
}

TEST(Iterative, ReferenceMinMin) {
  auto inst = reference(Variant::MinMin);
  auto s = solve_iterative(inst);
  EXPECT_EQ(s.value, TropScalar(0));
  expect_valid(inst, s);
  const auto& trace = std::get<IterationTrace>(s.certificate);
  EXPECT_LE(trace.iterations, minimal_points(inst.tp2).size() + 1);
}

TEST(Iterative, SingletonLowerLevelStopsAtStepZero) {
  BilevelInstance inst(testsupport::reference_tp1(), TropPolytopeV({{1, 2}}), {0, 0}, {0, 0}, Variant::MinMin);
  auto s = solve_iterative(inst);
  const auto& trace = std::get<IterationTrace>(s.certificate);
  EXPECT_EQ(trace.iterations, 1u);
  EXPECT_TRUE(trace.cuts.empty());
  EXPECT_EQ(s.y, (TropVector{1, 2}));
}

TEST(Iterative, ReferenceMaxMinMatchesOracle) {
  auto inst = reference(Variant::MaxMin);
  auto s = solve_iterative(inst);
  expect_valid(inst, s);
  EXPECT_EQ(s.value, oracle::brute_bilevel(inst, kGrid).value);
}

TEST(Iterative, RejectsMaxLowerVariants) {
  EXPECT_THROW(solve_iterative(reference(Variant::MinMax)), UnsupportedInstance);
}

TEST(Enumerate, Reference) {
  auto inst = reference(Variant::MinMin);
  auto s = solve_enumerate(inst);
  EXPECT_EQ(s.value, TropScalar(0));
  EXPECT_EQ(std::get<MinimalPointWitness>(s.certificate).y_candidate, (TropVector{0, 0}));
  expect_valid(inst, s);
}

TEST(Enumerate, SingletonLowerLevel) {
  BilevelInstance inst(testsupport::reference_tp1(), TropPolytopeV({{1, -4}}), {0, 0}, {0, 0}, Variant::MinMin);
  auto s = solve_enumerate(inst);
  // min over TP1 of max(x1, x2, b^T g = 1); TP1 reaches max(x) = -2.
  EXPECT_EQ(s.value, TropScalar(1));
}

TEST(Enumerate, RestrictedToMinMin) {
  EXPECT_THROW(solve_enumerate(reference(Variant::MaxMin)), UnsupportedInstance);
}

TEST(MaxMax, Reference) {
  auto inst = reference(Variant::MaxMax);
  auto s = solve_maxmax(inst);
  EXPECT_EQ(s.x, (TropVector{-1, 0}));
  EXPECT_EQ(s.y, (TropVector{2, 1}));
  EXPECT_EQ(s.value, TropScalar(2));
}

TEST(MaxMax, BottomObjective) {
  const auto bot = TropScalar::bottom();
  auto inst = reference(Variant::MaxMax, {bot, bot}, {bot, bot});
  auto s = solve_maxmax(inst);
  EXPECT_TRUE(s.value.is_bottom());
  EXPECT_EQ(s.y, (TropVector{2, 1}));
}

TEST(XStar, Values) {
  EXPECT_EQ(x_star({2, 1}), (TropVector{1, 2}));
  EXPECT_EQ(x_star({0, 0, 0}), (TropVector{0, 0, 0}));
  EXPECT_EQ(x_star({7, -3}), (TropVector{-3, 7}));
  EXPECT_THROW(x_star({TropScalar::bottom(), 1}), UnsupportedInstance);
}

TEST(Partition, ReferenceDescriptions) {
  auto inst = reference(Variant::MinMax);
  auto p1 = partition_piece(inst, {0}, {1});
  EXPECT_EQ(p1.describe_y(), "y_1 = 2");
  EXPECT_EQ(p1.describe_x(), "x_2 - 2 <= x_1 - 1");
  auto p2 = partition_piece(inst, {1}, {0});
  EXPECT_EQ(p2.describe_y(), "y_2 = 1");
  auto p12 = partition_piece(inst, {0, 1}, {});
  EXPECT_EQ(p12.describe_y(), "max(1 + y_1, 2 + y_2) = 3");
  EXPECT_EQ(p12.describe_x(), "x_1 - 1 = x_2 - 2");
  EXPECT_THROW(partition_piece(inst, {}, {0, 1}), PreconditionError);
  EXPECT_THROW(partition_piece(inst, {0}, {0, 1}), PreconditionError);
  EXPECT_THROW(partition_piece(inst, {0}, {}), PreconditionError);
}

TEST(Partition, PiecesOrderedByMask) {
  auto pieces = all_partition_pieces(reference(Variant::MinMax));
  ASSERT_EQ(pieces.size(), 3u);
  EXPECT_EQ(pieces[0].I, (std::vector<std::size_t>{0}));
  EXPECT_EQ(pieces[1].I, (std::vector<std::size_t>{1}));
  EXPECT_EQ(pieces[2].I, (std::vector<std::size_t>{0, 1}));
}

TEST(MinMax, ReferenceEqualCoefficients) {
  auto inst = reference(Variant::MinMax);
  auto s = solve_minmax(inst);
  EXPECT_EQ(s.value, TropScalar(1));
  EXPECT_EQ(s.x, (TropVector{-3, -1}));
  EXPECT_EQ(s.y, (TropVector{1, 1}));
  expect_valid(inst, s);
}

TEST(MinMax, ReferenceHeavyA2) {
  auto inst = reference(Variant::MinMax, {0, 10});
  auto s = solve_minmax(inst);
  EXPECT_EQ(s.value, TropScalar(7));
  EXPECT_EQ(s.x, (TropVector{-2, -3}));
  EXPECT_EQ(s.y, (TropVector{2, -1}));
  expect_valid(inst, s);
}

TEST(MinMax, JointPiecesAgree) {
  SolverOptions joint;
  joint.joint_pieces = true;
  for (auto a : {TropVector{0, 0}, TropVector{0, 10}, TropVector{3, -2}}) {
    auto inst = reference(Variant::MinMax, a);
    auto s = solve_minmax(inst);
    auto t = solve_minmax(inst, joint);
    EXPECT_EQ(s.value, t.value);
  }
}

TEST(MinMax, OneDimensional) {
  BilevelInstance inst(TropPolytopeV({{3}, {1}}), TropPolytopeV({{-2}, {4}}), {0}, {0}, Variant::MinMax);
  auto s = solve_minmax(inst);
  EXPECT_EQ(s.y, (TropVector{4}));
  EXPECT_EQ(std::get<PartitionWitness>(s.certificate).pieces_total, 1u);
}

TEST(Dispatch, AutoAndCompatibility) {
  EXPECT_EQ(resolve_algorithm(Variant::MinMin, Algorithm::Auto), Algorithm::Enumerate);
  EXPECT_EQ(resolve_algorithm(Variant::MaxMin, Algorithm::Auto), Algorithm::Iterative);
  EXPECT_EQ(resolve_algorithm(Variant::MinMax, Algorithm::Auto), Algorithm::Decompose);
  EXPECT_EQ(resolve_algorithm(Variant::MaxMax, Algorithm::Auto), Algorithm::ClosedForm);
  EXPECT_THROW(resolve_algorithm(Variant::MaxMax, Algorithm::Enumerate), UnsupportedInstance);
  EXPECT_THROW(resolve_algorithm(Variant::MinMax, Algorithm::Iterative), UnsupportedInstance);
  EXPECT_EQ(resolve_algorithm(Variant::MaxMax, Algorithm::Decompose), Algorithm::Decompose);
}

TEST(Dispatch, MaxMaxDecomposeMatchesClosedForm) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    auto inst = testsupport::random_instance(rng, Variant::MaxMax);
    EXPECT_EQ(solve(inst, Algorithm::Decompose).value, solve(inst, Algorithm::ClosedForm).value);
  }
}

TEST(Properties, RandomMinMinAgreement) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 15; ++k) {
    auto inst = testsupport::random_instance(rng, Variant::MinMin);
    auto it = solve_iterative(inst);
    auto en = solve_enumerate(inst);
    EXPECT_EQ(it.value, en.value) << "instance " << k;
    expect_valid(inst, it);
    expect_valid(inst, en);
    const auto& trace = std::get<IterationTrace>(it.certificate);
    EXPECT_LE(trace.iterations, minimal_points(inst.tp2).size() + 1);
    auto sorted = trace.cuts;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  }
}

TEST(Properties, RandomAgainstOracle) {
  std::mt19937_64 rng(77);
  for (Variant v : {Variant::MinMin, Variant::MaxMin, Variant::MinMax, Variant::MaxMax}) {
    for (int k = 0; k < 4; ++k) {
      auto inst = testsupport::random_instance(rng, v, 3);
      auto s = solve(inst, Algorithm::Auto);
      expect_valid(inst, s);
      auto brute = oracle::brute_bilevel(inst, kGrid);
      // The grid is a subset of the feasible set: the exact optimum is at
      // least as good as the sampled one.
      if (upper_minimizes(v))
        EXPECT_LE(s.value, brute.value);
      else
        EXPECT_GE(s.value, brute.value);
    }
  }
}

TEST(Properties, ScalingKeepsMaxLowerFeasibility) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    auto inst = testsupport::random_instance(rng, Variant::MinMax);
    const auto ymax = greatest_point(inst.tp2);
    for (const auto& x : oracle::sample_polytope(inst.tp1, {1, -2, true})) {
      for (const auto& y : oracle::sample_polytope(inst.tp2, {1, -2, true})) {
        if (tdot(x, y) != tdot(x, ymax)) continue;
        for (long lam : {-3L, 2L, 7L}) {
          auto sx = tscale(TropScalar(lam), x);
          EXPECT_EQ(tdot(sx, y), tdot(sx, ymax));
        }
      }
    }
  }
}

TEST(Properties, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(8);
  SolverOptions parallel;
  parallel.threads = 4;
  for (Variant v : {Variant::MinMin, Variant::MinMax}) {
    for (int k = 0; k < 6; ++k) {
      auto inst = testsupport::random_instance(rng, v);
      auto a = solve(inst, Algorithm::Auto);
      auto b = solve(inst, Algorithm::Auto, parallel);
      EXPECT_EQ(a.value, b.value);
      EXPECT_EQ(a.x, b.x);
      EXPECT_EQ(a.y, b.y);
    }
  }
}
