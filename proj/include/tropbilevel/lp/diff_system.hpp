#pragma once

// Systems of difference constraints  x_v - x_u <= c  over the rationals,
// solved by Bellman-Ford on the constraint graph. A distinguished zero
// variable anchors absolute bounds (x_v <= c is x_v - zero <= c).
//
// The solution set of such a system is a lattice under componentwise min
// and max. Minimizing returns its least element and maximizing its greatest
// element, so every variable is simultaneously at its own optimum.

#include <optional>
#include <span>
#include <vector>

#include "tropbilevel/lp/linear.hpp"
#include "tropbilevel/lp/selector_system.hpp"

namespace tropbilevel::lp {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

const char* to_string(SolveStatus s);

struct LeafResult {
  SolveStatus status = SolveStatus::Infeasible;
  /// Objective value; meaningful only when Optimal and an objective is set.
  Rational value{0};
  std::vector<Rational> assignment;
};

struct DiffEdge {
  std::size_t from;
  std::size_t to;
  Rational weight;  // x_to - x_from <= weight
};

class DiffSystem {
 public:
  explicit DiffSystem(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  std::size_t zero() const { return num_vars_; }

  /// x_v - x_u <= c
  void add(std::size_t v, std::size_t u, const Rational& c) { edges_.push_back({u, v, c}); }
  void add_upper(std::size_t v, const Rational& c) { add(v, zero(), c); }
  void add_lower(std::size_t v, const Rational& c) { add(zero(), v, -c); }

  const std::vector<DiffEdge>& edges() const { return edges_; }
  void reserve(std::size_t n) { edges_.reserve(n); }
  void append(std::span<const DiffEdge> more) { edges_.insert(edges_.end(), more.begin(), more.end()); }

 private:
  std::size_t num_vars_;
  std::vector<DiffEdge> edges_;
};

/// Optimizes one variable relative to the zero variable. Without an
/// objective variable returns a feasible point (the least solution when
/// it exists).
LeafResult solve_diff_system(const DiffSystem& system, const Objective& objective);

/// Edges for `c` when it is a difference constraint (at most two variables,
/// coefficients +1/-1 in opposite signs, or one variable with coefficient
/// +-1). Equalities produce two edges.
std::optional<std::vector<DiffEdge>> as_difference(const LinConstraint& c, std::size_t zero);

/// Box bounds of every registry variable as edges against the zero variable.
std::vector<DiffEdge> box_edges(const VarRegistry& registry);

}  // namespace tropbilevel::lp
