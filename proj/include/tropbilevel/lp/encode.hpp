#pragma once

// Tropical constraints as selector systems.
//
// A tropical inequality  max_i l_i <= max_k r_k  splits into a conjunctive
// part (every l_i is below the chosen r_k) and a disjunctive witness (which
// r_k that is). The witness becomes a selector; in a big-M model it is the
// binary vector w with sum w = 1.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tropbilevel/lp/selector_system.hpp"
#include "tropbilevel/trop_poly.hpp"

namespace tropbilevel::lp {

struct MembershipBlock {
  std::vector<VarId> coords;
  std::vector<VarId> lambdas;
  std::size_t normalization_selector = 0;
  std::vector<std::size_t> coordinate_selectors;
};

/// Variables prefix_1..prefix_n constrained to the hull of `p`:
///   lambda_i <= 0,  one selected lambda_i = 0,
///   x_j >= lambda_i + g_ij  for all i, j,
///   x_j <= lambda_s + g_sj  for the generator s selected for coordinate j.
/// Throws UnsupportedInstance on a BOTTOM generator coordinate.
MembershipBlock encode_membership(SelectorSystem& sys, const TropPolytopeV& p, std::string_view prefix);

struct CutBlock {
  VarId level;
  std::size_t selector;
};

/// x^T y <= x^T z with a fresh level variable t = x^T z.
CutBlock encode_cut(SelectorSystem& sys, std::span<const VarId> x, std::span<const VarId> y, const TropVector& z,
                    std::string_view name);

/// max(lhs) <= max(rhs). Returns the witness selector, or nothing when the
/// right-hand side has a single term (no choice to make). An empty rhs
/// with a nonempty lhs marks the system infeasible.
std::optional<std::size_t> encode_tropical_leq(SelectorSystem& sys, std::span<const LinTerm> lhs,
                                               std::span<const LinTerm> rhs, std::string_view name);

/// max(lhs) = max(rhs), as two inequalities.
void encode_tropical_eq(SelectorSystem& sys, std::span<const LinTerm> lhs, std::span<const LinTerm> rhs,
                        std::string_view name);

/// Terms c_i + v_i for every finite c_i.
std::vector<LinTerm> tropical_terms(const TropVector& coeffs, std::span<const VarId> vars);

/// Objective variable `name` equal at optimum to max(terms).
///   Minimize: t >= term for every term.
///   Maximize: t <= selected term.
/// Returns nothing (and sets no objective) when `terms` is empty.
std::optional<VarId> encode_max_objective(SelectorSystem& sys, std::span<const LinTerm> terms, Sense sense,
                                          std::string_view name);

}  // namespace tropbilevel::lp
