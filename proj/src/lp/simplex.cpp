#include "tropbilevel/lp/simplex.hpp"

#include <stdexcept>

namespace tropbilevel::lp {
namespace {

enum class RowKind { Slack, SurplusArtificial, Artificial };

class Tableau {
 public:
  // rows: a . v' (<= | =) b over shifted, nonnegative structural variables.
  struct Row {
    std::vector<Rational> a;
    bool equality;
    Rational b;
  };

  Tableau(std::size_t structural, std::vector<Row> rows) : structural_(structural) {
    // Normalize to b >= 0 and count auxiliary columns.
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    std::vector<RowKind> kinds;
    kinds.reserve(rows.size());
    for (auto& r : rows) {
      if (r.b < 0) {
        for (auto& x : r.a) x = -x;
        r.b = -r.b;
        kinds.push_back(r.equality ? RowKind::Artificial : RowKind::SurplusArtificial);
      } else {
        kinds.push_back(r.equality ? RowKind::Artificial : RowKind::Slack);
      }
      if (kinds.back() != RowKind::Artificial) ++slacks;
      if (kinds.back() != RowKind::Slack) ++artificials;
    }
    first_artificial_ = structural_ + slacks;
    cols_ = first_artificial_ + artificials;
    rhs_ = cols_;

    t_.assign(rows.size(), std::vector<Rational>(cols_ + 1));
    basis_.resize(rows.size());
    std::size_t next_slack = structural_;
    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < structural_; ++j) t_[i][j] = rows[i].a[j];
      t_[i][rhs_] = rows[i].b;
      switch (kinds[i]) {
        case RowKind::Slack:
          t_[i][next_slack] = 1;
          basis_[i] = next_slack++;
          break;
        case RowKind::SurplusArtificial:
          t_[i][next_slack++] = -1;
          t_[i][next_art] = 1;
          basis_[i] = next_art++;
          break;
        case RowKind::Artificial:
          t_[i][next_art] = 1;
          basis_[i] = next_art++;
          break;
      }
    }
  }

  /// Phase 1. Returns false when the system is infeasible.
  bool find_feasible_basis() {
    if (first_artificial_ == cols_) return true;
    std::vector<Rational> cost(cols_, Rational(0));
    for (std::size_t j = first_artificial_; j < cols_; ++j) cost[j] = 1;
    set_costs(cost);
    run(cols_);
    if (z_[rhs_] != 0) return false;  // -(objective) stored in z_[rhs_]

    // Pivot zero-level artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (t_[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col == first_artificial_) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        pivot(i, col);
        ++i;
      }
    }
    return true;
  }

  /// Phase 2 minimization over structural costs. Returns false if unbounded.
  bool minimize(const std::vector<Rational>& structural_cost) {
    std::vector<Rational> cost(cols_, Rational(0));
    for (std::size_t j = 0; j < structural_; ++j) cost[j] = structural_cost[j];
    set_costs(cost);
    return run(first_artificial_);
  }

  std::vector<Rational> structural_values() const {
    std::vector<Rational> x(structural_, Rational(0));
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (basis_[i] < structural_) x[basis_[i]] = t_[i][rhs_];
    return x;
  }

 private:
  void set_costs(const std::vector<Rational>& cost) {
    z_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) z_[j] = cost[j];
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[i][j] != 0) z_[j] -= cb * t_[i][j];
    }
  }

  // Bland's rule over columns [0, allowed). Returns false on unboundedness.
  bool run(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (z_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;

      std::size_t leave = t_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][rhs_] / t_[i][enter];
        if (leave == t_.size() || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = t_[r];
    const Rational inv = 1 / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (prow[j] != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c] == 0) return;
      const Rational f = row[c];
      for (std::size_t j : nz) row[j] -= f * prow[j];
    };
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (i != r) eliminate(t_[i]);
    eliminate(z_);
    basis_[r] = c;
  }

  std::size_t structural_;
  std::size_t first_artificial_ = 0;
  std::size_t cols_ = 0;
  std::size_t rhs_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> z_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LeafResult solve_lp_exact(const VarRegistry& registry, std::span<const LinConstraint> constraints,
                          const LinearObjective& objective) {
  const std::size_t n = registry.size();
  LeafResult out;

  std::vector<Tableau::Row> rows;
  rows.reserve(constraints.size() + n);
  for (const auto& c : constraints) {
    const LinTerm d = c.normalized();
    Tableau::Row row{std::vector<Rational>(n, Rational(0)), c.rel == Relation::Equal, -d.constant};
    for (const auto& [v, a] : d.coeffs) {
      if (v >= n) throw std::logic_error("constraint references an unregistered variable");
      row.a[v] = a;
      row.b -= a * registry[v].lo;
    }
    if (d.coeffs.empty()) {
      const bool ok = row.equality ? row.b == 0 : row.b >= 0;
      if (!ok) return out;  // infeasible constant row
      continue;
    }
    rows.push_back(std::move(row));
  }
  for (VarId v = 0; v < n; ++v) {
    Tableau::Row row{std::vector<Rational>(n, Rational(0)), false, registry[v].hi - registry[v].lo};
    row.a[v] = 1;
    rows.push_back(std::move(row));
  }

  Tableau tab(n, std::move(rows));
  if (!tab.find_feasible_basis()) return out;

  std::vector<Rational> cost(n, Rational(0));
  const bool maximize = objective.sense == Sense::Maximize;
  for (const auto& [v, a] : objective.expr.coeffs) cost[v] = maximize ? Rational(-a) : a;
  if (!tab.minimize(cost)) {
    out.status = SolveStatus::Unbounded;
    return out;
  }

  out.status = SolveStatus::Optimal;
  out.assignment = tab.structural_values();
  for (VarId v = 0; v < n; ++v) out.assignment[v] += registry[v].lo;
  out.value = objective.expr.evaluate(out.assignment);
  return out;
}

LeafResult solve_lp_exact(const VarRegistry& registry, std::span<const LinConstraint> constraints,
                          const Objective& objective) {
  LinearObjective lin{objective.sense, {}};
  if (objective.var) lin.expr = LinTerm::var(*objective.var);
  return solve_lp_exact(registry, constraints, lin);
}

}  // namespace tropbilevel::lp
