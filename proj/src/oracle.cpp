#include "tropbilevel/oracle.hpp"

#include <set>

#include "tropbilevel/errors.hpp"

namespace tropbilevel::oracle {

std::vector<TropVector> sample_polytope(const TropPolytopeV& p, const GridSpec& grid) {
  if (grid.step <= 0) throw PreconditionError("grid step must be positive");
  if (grid.depth >= 0) throw PreconditionError("grid depth must be negative");

  std::vector<TropScalar> levels;
  for (Rational v = 0; v >= grid.depth; v -= grid.step) levels.emplace_back(v);
  levels.push_back(TropScalar::bottom());

  const std::size_t m = p.size();
  long double total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= static_cast<long double>(levels.size());
  if (total > static_cast<long double>(grid.budget))
    throw BudgetExceeded("oracle grid has " + std::to_string(levels.size()) + "^" + std::to_string(m) +
                         " coefficient vectors");

  std::set<TropVector> seen;
  if (grid.include_generators)
    for (const auto& g : p.generators()) seen.insert(g);

  std::vector<std::size_t> idx(m, 0);
  std::vector<TropScalar> lambda(m);
  for (;;) {
    bool has_zero = false;
    for (std::size_t i = 0; i < m; ++i) {
      lambda[i] = levels[idx[i]];
      has_zero = has_zero || idx[i] == 0;
    }
    if (has_zero) seen.insert(tcomb(p.generators(), lambda));
    std::size_t k = 0;
    while (k < m && ++idx[k] == levels.size()) idx[k++] = 0;
    if (k == m) break;
  }
  return {seen.begin(), seen.end()};
}

TropScalar brute_phi(const TropPolytopeV& p, const TropVector& x, const GridSpec& grid) {
  std::optional<TropScalar> best;
  for (const auto& s : sample_polytope(p, grid)) {
    TropScalar v = tdot(x, s);
    if (!best || v < *best) best = v;
  }
  return *best;
}

BruteResult brute_bilevel(const BilevelInstance& inst, const GridSpec& grid) {
  const auto xs = sample_polytope(inst.tp1, grid);
  const auto ys = sample_polytope(inst.tp2, grid);
  if (static_cast<long double>(xs.size()) * ys.size() > static_cast<long double>(grid.budget) * 10)
    throw BudgetExceeded("oracle pair scan over " + std::to_string(xs.size()) + " x " + std::to_string(ys.size()));

  const bool upper_min = upper_minimizes(inst.variant);
  const bool lower_min = lower_minimizes(inst.variant);
  const TropVector ymax = greatest_point(inst.tp2);

  std::optional<BruteResult> best;
  std::size_t kept = 0;
  for (const auto& x : xs) {
    TropScalar target;
    if (lower_min) {
      target = tdot(x, ys.front());
      for (const auto& y : ys) target = std::min(target, tdot(x, y));
    } else {
      target = tdot(x, ymax);
    }
    for (const auto& y : ys) {
      if (tdot(x, y) != target) continue;
      ++kept;
      TropScalar v = inst.objective(x, y);
      // xs and ys are sorted, so the first pair reaching a value is the lex-smallest.
      if (!best || (upper_min ? v < best->value : v > best->value)) best = BruteResult{v, x, y, 0};
    }
  }
  if (!best) throw InfeasibleProblem("oracle kept no pair");
  best->pairs_kept = kept;
  return *best;
}

}  // namespace tropbilevel::oracle
