#pragma once

// Big-M MILP models and their CPLEX-LP text form.
//
// A selector system becomes a MILP with one binary w_{s,k} per selector
// index, a row sum_k w_{s,k} = 1 per selector, and each guarded row relaxed
// by M (1 - w_{s,k}). Reading the text back and regrouping the binaries
// recovers an equivalent selector system whose leaves are the big-M rows.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tropbilevel/lp/enumerate.hpp"
#include "tropbilevel/lp/selector_system.hpp"

namespace tropbilevel::lp {

enum class RowSense { LessEq, GreaterEq, Equal };

struct MilpVar {
  std::string name;
  Rational lo{0};
  Rational hi{0};
  bool binary = false;
};

struct MilpRow {
  std::string name;
  std::map<std::size_t, Rational> coeffs;
  RowSense sense = RowSense::LessEq;
  Rational rhs{0};
};

struct MilpModel {
  std::vector<MilpVar> vars;
  Sense sense = Sense::Minimize;
  std::map<std::size_t, Rational> objective;
  std::vector<MilpRow> rows;
  /// Free-form lines written as LP comments at the top of the file.
  std::vector<std::string> header;
  Rational big_m{0};
};

struct BigMBound {
  /// (max datum - min datum + 1) * (2n + 2)
  Rational formula;
  /// Largest violation any relaxed guarded row can reach over the box.
  Rational required;
  /// max(formula, required); the value used in the model.
  Rational used;
};

BigMBound compute_big_m(const SelectorSystem& sys);

MilpModel to_bigm_model(const SelectorSystem& sys);

/// Writes CPLEX-LP text. Every coefficient must be a terminating decimal.
void write_lp(const MilpModel& model, std::ostream& os);

/// Reads the LP dialect produced by write_lp (sections Minimize/Maximize,
/// Subject To, Bounds, Binary, End; '\' comments). Throws
/// std::invalid_argument with a line number on malformed input.
MilpModel read_lp(std::istream& is);

/// to_bigm_model + write_lp into `path`. Returns the model that was written.
MilpModel export_bigm_milp(const SelectorSystem& sys, const std::filesystem::path& path);

/// Regroups binaries by their sum-to-one rows into selectors and turns
/// every row into fixed or guarded constraints with binaries substituted.
SelectorSystem selector_system_from_milp(const MilpModel& model);

/// Binary enumeration with exact leaf solves over a big-M model.
EnumerateResult solve_milp_by_enumeration(const MilpModel& model, const EnumerateOptions& options = {});

}  // namespace tropbilevel::lp
