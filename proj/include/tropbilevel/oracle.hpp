#pragma once

// Brute-force reference answers by sampling tropical coefficient space.
// Every sample is an exact hull member, so comparisons against the solvers
// are exact equalities.

#include <cstdint>
#include <vector>

#include "tropbilevel/bilevel.hpp"

namespace tropbilevel::oracle {

struct GridSpec {
  Rational step{1};
  /// Lowest finite coefficient level (inclusive when a multiple of step).
  Rational depth{-4};
  bool include_generators = true;
  /// Cap on the number of coefficient vectors visited.
  std::uint64_t budget = 1'000'000;
};

/// tcomb over lambda in {0, -step, ..., >= depth, BOTTOM}^m with max lambda = 0,
/// deduplicated and sorted.
std::vector<TropVector> sample_polytope(const TropPolytopeV& p, const GridSpec& grid);

/// min of tdot(x, s) over the samples of p.
TropScalar brute_phi(const TropPolytopeV& p, const TropVector& x, const GridSpec& grid);

struct BruteResult {
  TropScalar value;
  TropVector x;
  TropVector y;
  std::size_t pairs_kept = 0;
};

/// Best objective over sampled pairs whose y is lower-optimal for x among
/// the y-samples (min lower level) or attains tdot(x, ymax) (max lower
/// level). Ties go to the lexicographically smallest (x, y).
BruteResult brute_bilevel(const BilevelInstance& inst, const GridSpec& grid);

}  // namespace tropbilevel::oracle
