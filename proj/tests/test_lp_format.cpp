#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "support/random_instances.hpp"
#include "tropbilevel/lp/encode.hpp"
#include "tropbilevel/lp/lp_format.hpp"

using namespace tropbilevel;
using namespace tropbilevel::lp;

namespace {

std::size_t count_binaries(const MilpModel& m) {
  std::size_t n = 0;
  for (const auto& v : m.vars) n += v.binary;
  return n;
}

MilpModel round_trip(const MilpModel& m) {
  std::stringstream ss;
  write_lp(m, ss);
  return read_lp(ss);
}

bool row_holds(const MilpRow& row, const std::vector<Rational>& point) {
  Rational lhs = 0;
  for (const auto& [v, a] : row.coeffs) lhs += a * point[v];
  switch (row.sense) {
    case RowSense::LessEq:
      return lhs <= row.rhs;
    case RowSense::GreaterEq:
      return lhs >= row.rhs;
    case RowSense::Equal:
      return lhs == row.rhs;
  }
  return false;
}

// Continuous part first, then one binary per (selector, index) in order.
std::vector<Rational> with_binaries(const SelectorSystem& sys, std::span<const Rational> x,
                                    std::span<const std::size_t> choice) {
  std::vector<Rational> point(x.begin(), x.end());
  for (std::size_t s = 0; s < sys.selectors().size(); ++s)
    for (std::size_t k = 0; k < sys.selectors()[s].domain; ++k) point.emplace_back(choice[s] == k ? 1 : 0);
  return point;
}

}  // namespace

TEST(Export, OneSelectorDomainTwo) {
  SelectorSystem sys;
  auto x = sys.add_var("x", -2, 2);
  auto s = sys.add_selector("pick", 2);
  sys.add_guarded(s, 0, leq(LinTerm::var(x), LinTerm::constant_term(1)));
  sys.add_guarded(s, 1, leq(LinTerm::constant_term(1), LinTerm::var(x)));
  auto m = to_bigm_model(sys);
  EXPECT_EQ(count_binaries(m), 2u);
  std::stringstream ss;
  write_lp(m, ss);
  const std::string text = ss.str();
  EXPECT_NE(text.find("Binary"), std::string::npos);
  EXPECT_NE(text.find("w_pick_1 + w_pick_2 = 1"), std::string::npos) << text;
  EXPECT_NE(text.find("\\ M = "), std::string::npos);
}

TEST(Export, NoGuardsIsPureLp) {
  SelectorSystem sys;
  auto x = sys.add_var("x", -2, 2);
  sys.add_fixed(leq(LinTerm::var(x), LinTerm::constant_term(1)));
  sys.set_objective({Sense::Maximize, x});
  auto m = to_bigm_model(sys);
  EXPECT_EQ(count_binaries(m), 0u);
  std::stringstream ss;
  write_lp(m, ss);
  EXPECT_EQ(ss.str().find("Binary"), std::string::npos);
  auto r = solve_milp_by_enumeration(round_trip(m));
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.value, 1);
}

TEST(Export, BigMFormula) {
  SelectorSystem sys;
  sys.set_dimension(2);
  sys.note_datum(-3);
  sys.note_datum(2);
  auto bound = compute_big_m(sys);
  EXPECT_EQ(bound.formula, Rational(6 * 6));
  EXPECT_GE(bound.used, bound.formula);
  EXPECT_GE(bound.used, bound.required);
}

TEST(Export, FileErrorsNamePath) {
  SelectorSystem sys;
  sys.add_var("x", 0, 1);
  try {
    export_bigm_milp(sys, "/nonexistent-dir/out.lp");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.lp"), std::string::npos);
  }
}

TEST(ReadLp, RejectsMalformed) {
  std::stringstream bad("Minimize\n obj: x +\nSubject To\n c1: x <= \nEnd\n");
  EXPECT_THROW(read_lp(bad), std::invalid_argument);
}

TEST(RoundTrip, ReferenceSubproblems) {
  auto inst = testsupport::reference(Variant::MinMin);
  std::vector<TropVector> none, one{{0, 0}}, two{{0, 0}, {2, -1}};
  for (const auto* cuts : {&none, &one, &two}) {
    auto step = build_iterative_system(inst, *cuts);
    auto native = enumerate_solve(step.system);
    auto model = round_trip(to_bigm_model(step.system));
    auto via = solve_milp_by_enumeration(model);
    ASSERT_EQ(native.status, via.status);
    EXPECT_EQ(native.value, via.value) << cuts->size() << " cuts";
  }
  auto mm = testsupport::reference(Variant::MinMax, {0, 10});
  for (const auto& piece : all_partition_pieces(mm)) {
    for (auto side : {PieceSide::X, PieceSide::Y}) {
      auto sys = build_piece_system(mm, piece, side);
      auto native = enumerate_solve(sys.system);
      auto via = solve_milp_by_enumeration(round_trip(to_bigm_model(sys.system)));
      ASSERT_EQ(native.status, via.status);
      if (native.status == SolveStatus::Optimal) EXPECT_EQ(native.value, via.value);
    }
  }
}

TEST(RoundTrip, ExportFileMatchesStream) {
  auto inst = testsupport::reference(Variant::MinMin);
  auto step = build_iterative_system(inst, {});
  auto path = std::filesystem::temp_directory_path() / "tropbilevel_roundtrip.lp";
  auto written = export_bigm_milp(step.system, path);
  std::ifstream in(path);
  auto back = read_lp(in);
  EXPECT_EQ(back.vars.size(), written.vars.size());
  EXPECT_EQ(back.rows.size(), written.rows.size());
  std::filesystem::remove(path);
}

TEST(Properties, IndicatorExactness) {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 8; ++k) {
    auto inst = testsupport::random_instance(rng, Variant::MinMin, 3);
    auto step = build_iterative_system(inst, minimal_points(inst.tp2));
    const auto& sys = step.system;
    auto model = to_bigm_model(sys);
    const auto& reg = sys.registry();

    // Random choices: leaf optimum (if any) plus random box points must
    // satisfy the leaf iff they satisfy the big-M rows under that choice.
    for (int t = 0; t < 30; ++t) {
      std::vector<std::size_t> choice;
      for (const auto& s : sys.selectors()) choice.push_back(std::uniform_int_distribution<std::size_t>(0, s.domain - 1)(rng));
      auto leaf = sys.instantiate(choice);
      std::vector<std::vector<Rational>> points;
      auto solved = solve_leaf(reg, leaf, sys.objective());
      if (solved.status == SolveStatus::Optimal) points.push_back(solved.assignment);
      for (int r = 0; r < 20; ++r) {
        std::vector<Rational> p;
        for (const auto& v : reg.vars()) {
          std::uniform_int_distribution<long> d(0, 8);
          p.push_back(v.lo + (v.hi - v.lo) * Rational(d(rng), 8));
        }
        points.push_back(std::move(p));
      }
      for (const auto& p : points) {
        bool leaf_ok = true;
        for (const auto& c : leaf) leaf_ok = leaf_ok && c.satisfied_by(p);
        auto full = with_binaries(sys, p, choice);
        bool milp_ok = true;
        for (const auto& row : model.rows) milp_ok = milp_ok && row_holds(row, full);
        EXPECT_EQ(leaf_ok, milp_ok);
      }
    }
  }
}
