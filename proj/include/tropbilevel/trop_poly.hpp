#pragma once

// Tropical polytopes in generator (V-) representation, and tropical
// halfspaces for the H-side membership checks.

#include <vector>

#include "tropbilevel/trop_core.hpp"

namespace tropbilevel {

/// Tropical convex hull of a finite, nonempty list of generators.
/// Exact duplicates are dropped on construction; order is otherwise kept.
class TropPolytopeV {
 public:
  explicit TropPolytopeV(std::vector<TropVector> generators);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return generators_.size(); }
  const std::vector<TropVector>& generators() const { return generators_; }
  const TropVector& generator(std::size_t i) const { return generators_[i]; }

  bool all_finite() const;

 private:
  std::vector<TropVector> generators_;
  std::size_t dim_ = 0;
};

/// { x : a^T x (+) alpha <= b^T x (+) beta }
struct TropHalfspace {
  TropVector a;
  TropVector b;
  TropScalar alpha = TropScalar::bottom();
  TropScalar beta = TropScalar::bottom();
};

struct TropPolyhedronH {
  std::size_t dim = 0;
  std::vector<TropHalfspace> halfspaces;
};

struct Membership {
  bool member = false;
  /// Residuated coefficients capped at 0. When `member` holds these witness
  /// the combination: tcomb(generators, coefficients) == x.
  std::vector<TropScalar> coefficients;
};

Membership contains(const TropPolytopeV& p, const TropVector& x);

bool contains_h(const TropPolyhedronH& h, const TropVector& x);

/// Componentwise maximum of the generators.
TropVector greatest_point(const TropPolytopeV& p);

/// Generators with no other generator below them. Every hull point
/// dominates the generator carrying coefficient 0 in any witnessing
/// combination, so these are exactly the minimal points of the hull.
std::vector<TropVector> minimal_points(const TropPolytopeV& p);

/// Drops, in order, every generator lying in the hull of the ones still kept.
TropPolytopeV extreme_generators(const TropPolytopeV& p);

struct PhiResult {
  TropScalar value;
  /// Lexicographically smallest minimal point attaining `value`.
  TropVector argmin;
};

/// min { x^T y : y in P }, scanned over the minimal points.
PhiResult phi_and_argmin(const TropPolytopeV& p, const TropVector& x);

}  // namespace tropbilevel
