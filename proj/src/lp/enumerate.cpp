#include "tropbilevel/lp/enumerate.hpp"

#include <algorithm>

#include "tropbilevel/errors.hpp"
#include "tropbilevel/lp/simplex.hpp"

namespace tropbilevel::lp {

bool is_difference_system(std::span<const LinConstraint> constraints, std::size_t zero) {
  return std::all_of(constraints.begin(), constraints.end(),
                     [zero](const LinConstraint& c) { return as_difference(c, zero).has_value(); });
}

LeafResult solve_leaf(const VarRegistry& registry, std::span<const LinConstraint> constraints,
                      const Objective& objective) {
  const std::size_t zero = registry.size();
  DiffSystem diff(registry.size());
  diff.append(box_edges(registry));
  for (const auto& c : constraints) {
    auto edges = as_difference(c, zero);
    if (!edges) return solve_lp_exact(registry, constraints, objective);
    diff.append(*edges);
  }
  return solve_diff_system(diff, objective);
}

bool better_candidate(const Objective& objective, const Rational& value_a, std::span<const Rational> a,
                      const Rational& value_b, std::span<const Rational> b) {
  if (objective.var && value_a != value_b)
    return objective.sense == Sense::Minimize ? value_a < value_b : value_a > value_b;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

struct Split {
  std::vector<DiffEdge> edges;
  std::vector<const LinConstraint*> general;
};

Split split(const std::vector<LinConstraint>& constraints, std::size_t zero) {
  Split out;
  for (const auto& c : constraints) {
    if (auto e = as_difference(c, zero)) {
      out.edges.insert(out.edges.end(), e->begin(), e->end());
    } else {
      out.general.push_back(&c);
    }
  }
  return out;
}

class Search {
 public:
  Search(const SelectorSystem& system, const EnumerateOptions& options) : sys_(system), opt_(options) {
    const std::size_t zero = sys_.registry().size();
    base_ = split(sys_.fixed(), zero);
    auto boxes = box_edges(sys_.registry());
    base_.edges.insert(base_.edges.begin(), boxes.begin(), boxes.end());
    guarded_.resize(sys_.selectors().size());
    for (std::size_t s = 0; s < sys_.selectors().size(); ++s) {
      guarded_[s].reserve(sys_.selectors()[s].domain);
      for (std::size_t k = 0; k < sys_.selectors()[s].domain; ++k) guarded_[s].push_back(split(sys_.guarded(s, k), zero));
    }
    edges_ = base_.edges;
    general_ = base_.general;
    choice_.assign(sys_.selectors().size(), 0);
  }

  EnumerateResult run() {
    visit(0);
    result_.status = unbounded_ ? SolveStatus::Unbounded : found_ ? SolveStatus::Optimal : SolveStatus::Infeasible;
    return std::move(result_);
  }

 private:
  void visit(std::size_t depth) {
    if (++result_.nodes > opt_.budget)
      throw BudgetExceeded("selector enumeration exceeded its budget of " + std::to_string(opt_.budget) + " nodes");

    const bool leaf = depth == choice_.size();
    if (opt_.prune || leaf) {
      DiffSystem relax(sys_.registry().size());
      relax.append(edges_);
      LeafResult r = solve_diff_system(relax, sys_.objective());
      if (r.status == SolveStatus::Infeasible) return;
      if (opt_.prune && found_ && r.status == SolveStatus::Optimal && strictly_worse(r.value)) return;
      if (leaf && general_.empty()) {
        offer(std::move(r));
        return;
      }
    }
    if (leaf) {
      std::vector<LinConstraint> all = sys_.instantiate(choice_);
      ++result_.lp_leaves;
      offer(solve_lp_exact(sys_.registry(), all, sys_.objective()));
      return;
    }

    for (std::size_t k = 0; k < sys_.selectors()[depth].domain; ++k) {
      choice_[depth] = k;
      const Split& g = guarded_[depth][k];
      const std::size_t edge_mark = edges_.size();
      const std::size_t general_mark = general_.size();
      edges_.insert(edges_.end(), g.edges.begin(), g.edges.end());
      general_.insert(general_.end(), g.general.begin(), g.general.end());
      visit(depth + 1);
      edges_.resize(edge_mark);
      general_.resize(general_mark);
    }
    choice_[depth] = 0;
  }

  bool strictly_worse(const Rational& bound) const {
    if (!sys_.objective().var) return false;
    return sys_.objective().sense == Sense::Minimize ? bound > result_.value : bound < result_.value;
  }

  void offer(LeafResult r) {
    ++result_.leaves_solved;
    if (r.status == SolveStatus::Unbounded) unbounded_ = true;
    if (r.status != SolveStatus::Optimal) return;
    if (!found_ || better_candidate(sys_.objective(), r.value, r.assignment, result_.value, result_.assignment)) {
      found_ = true;
      result_.value = r.value;
      result_.assignment = std::move(r.assignment);
      result_.choice = choice_;
    }
  }

  const SelectorSystem& sys_;
  const EnumerateOptions& opt_;
  Split base_;
  std::vector<std::vector<Split>> guarded_;
  std::vector<DiffEdge> edges_;
  std::vector<const LinConstraint*> general_;
  std::vector<std::size_t> choice_;
  EnumerateResult result_;
  bool found_ = false;
  bool unbounded_ = false;
};

}  // namespace

EnumerateResult enumerate_solve(const SelectorSystem& system, const EnumerateOptions& options) {
  if (system.infeasible()) return {};
  return Search(system, options).run();
}

}  // namespace tropbilevel::lp
