#pragma once

#include <span>

#include "tropbilevel/lp/diff_system.hpp"
#include "tropbilevel/lp/linear.hpp"
#include "tropbilevel/lp/selector_system.hpp"

namespace tropbilevel::lp {

struct LinearObjective {
  Sense sense = Sense::Minimize;
  LinTerm expr;  // empty expr: feasibility only
};

/// Exact two-phase dense-tableau simplex with Bland's least-index rule.
/// Every registry variable must carry a finite box; the box is part of the
/// problem.
LeafResult solve_lp_exact(const VarRegistry& registry, std::span<const LinConstraint> constraints,
                          const LinearObjective& objective);

LeafResult solve_lp_exact(const VarRegistry& registry, std::span<const LinConstraint> constraints,
                          const Objective& objective);

}  // namespace tropbilevel::lp
