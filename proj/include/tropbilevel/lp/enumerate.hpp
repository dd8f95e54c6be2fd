#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tropbilevel/lp/diff_system.hpp"
#include "tropbilevel/lp/selector_system.hpp"

namespace tropbilevel::lp {

/// Solves one plain linear system: Bellman-Ford when every constraint is a
/// difference constraint, the exact simplex otherwise.
LeafResult solve_leaf(const VarRegistry& registry, std::span<const LinConstraint> constraints,
                      const Objective& objective);

/// True when every constraint maps to difference edges.
bool is_difference_system(std::span<const LinConstraint> constraints, std::size_t zero);

struct EnumerateOptions {
  /// Maximum number of search nodes (partial and full choice vectors) visited.
  std::uint64_t budget = 1'000'000;
  /// Discard subtrees whose difference-constraint relaxation is infeasible
  /// or strictly worse than the incumbent. Off means plain exhaustive
  /// enumeration of every instantiation.
  bool prune = true;
};

struct EnumerateResult {
  SolveStatus status = SolveStatus::Infeasible;
  Rational value{0};
  std::vector<Rational> assignment;
  std::vector<std::size_t> choice;
  std::uint64_t nodes = 0;
  std::uint64_t leaves_solved = 0;
  std::uint64_t lp_leaves = 0;
};

/// Optimum over all selector instantiations. Ties on the objective are
/// broken by the lexicographically smallest assignment vector (registry
/// order), so the result does not depend on the visiting order.
/// Throws BudgetExceeded when the node budget runs out.
EnumerateResult enumerate_solve(const SelectorSystem& system, const EnumerateOptions& options = {});

/// Total order used to reduce candidate leaves: true when (value_a, a)
/// beats (value_b, b) under `objective`.
bool better_candidate(const Objective& objective, const Rational& value_a, std::span<const Rational> a,
                      const Rational& value_b, std::span<const Rational> b);

}  // namespace tropbilevel::lp
