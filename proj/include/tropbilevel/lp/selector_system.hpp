#pragma once

// A family of linear systems indexed by discrete selector choices. Each
// selector picks one index of its domain, and that choice switches on the
// constraints guarded by (selector, index). This is the exact counterpart of
// a big-M model with one binary per (selector, index) and a sum-to-one row
// per selector.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropbilevel/lp/linear.hpp"

namespace tropbilevel::lp {

struct SelectorVar {
  std::string name;
  std::size_t domain = 0;
};

enum class Sense { Minimize, Maximize };

/// Optimize a single variable. Without a variable the system is a pure
/// feasibility problem.
struct Objective {
  Sense sense = Sense::Minimize;
  std::optional<VarId> var;
};

class SelectorSystem {
 public:
  VarRegistry& registry() { return registry_; }
  const VarRegistry& registry() const { return registry_; }
  VarId add_var(std::string name, Rational lo, Rational hi) { return registry_.add(std::move(name), std::move(lo), std::move(hi)); }

  std::size_t add_selector(std::string name, std::size_t domain);
  void add_fixed(LinConstraint c);
  void add_guarded(std::size_t selector, std::size_t index, LinConstraint c);

  /// Marks the whole system infeasible (e.g. a tropical inequality whose
  /// right-hand side is an empty maximum).
  void mark_infeasible(std::string reason);
  bool infeasible() const { return infeasible_; }
  const std::string& infeasible_reason() const { return infeasible_reason_; }

  void set_objective(Objective o) { objective_ = o; }
  const Objective& objective() const { return objective_; }

  /// Records a finite instance datum; the range of these drives big-M.
  void note_datum(const Rational& v);
  void set_dimension(std::size_t n) { dimension_ = n; }
  std::size_t dimension() const { return dimension_; }
  const std::optional<Interval>& data_range() const { return data_range_; }

  const std::vector<LinConstraint>& fixed() const { return fixed_; }
  const std::vector<SelectorVar>& selectors() const { return selectors_; }
  const std::vector<LinConstraint>& guarded(std::size_t selector, std::size_t index) const;
  const std::map<std::pair<std::size_t, std::size_t>, std::vector<LinConstraint>>& all_guarded() const { return guarded_; }

  /// Plain linear system for a full choice vector.
  std::vector<LinConstraint> instantiate(std::span<const std::size_t> choice) const;

  /// Product of selector domains, saturating at UINT64_MAX.
  std::uint64_t instantiation_count() const;

 private:
  VarRegistry registry_;
  std::vector<LinConstraint> fixed_;
  std::vector<SelectorVar> selectors_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<LinConstraint>> guarded_;
  Objective objective_;
  bool infeasible_ = false;
  std::string infeasible_reason_;
  std::optional<Interval> data_range_;
  std::size_t dimension_ = 0;
};

}  // namespace tropbilevel::lp
