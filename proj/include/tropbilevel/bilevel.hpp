#pragma once

// Tropical bilevel problems
//
//   opt_{x,y}  a^T x (+) b^T y
//   s.t.       x in TP1,  y in argopt' { x^T y' : y' in TP2 }
//
// with opt, opt' in {min, max}. The lower-level direction opt' decides the
// solution method: min-lower variants go through cut generation or
// minimal-point enumeration, max-lower variants through the greatest point
// of TP2 and the (I, J) partition of the coordinates.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tropbilevel/lp/enumerate.hpp"
#include "tropbilevel/lp/encode.hpp"
#include "tropbilevel/trop_poly.hpp"

namespace tropbilevel {

/// Upper direction first, lower direction second.
enum class Variant { MinMin, MaxMin, MinMax, MaxMax };

const char* to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);
inline bool upper_minimizes(Variant v) { return v == Variant::MinMin || v == Variant::MinMax; }
inline bool lower_minimizes(Variant v) { return v == Variant::MinMin || v == Variant::MaxMin; }

struct BilevelInstance {
  TropPolytopeV tp1;
  TropPolytopeV tp2;
  TropVector a;
  TropVector b;
  Variant variant = Variant::MinMin;

  BilevelInstance(TropPolytopeV tp1, TropPolytopeV tp2, TropVector a, TropVector b, Variant variant);

  std::size_t dim() const { return tp1.dim(); }
  /// a^T x (+) b^T y
  TropScalar objective(const TropVector& x, const TropVector& y) const;
};

enum class Method { Iterative, Enumerate, ClosedForm, Decompose };
const char* to_string(Method m);

struct IterationTrace {
  /// Number of relaxed problems solved.
  std::size_t iterations = 0;
  /// z^0, z^1, ... in the order they were added.
  std::vector<TropVector> cuts;
};

struct MinimalPointWitness {
  /// The minimal point of TP2 fixed as y in the winning subproblem.
  TropVector y_candidate;
  std::size_t candidates = 0;
};

struct ClosedFormWitness {
  TropVector x_max;
  TropVector y_max;
};

struct PartitionWitness {
  /// 0-based coordinate indices.
  std::vector<std::size_t> I;
  std::vector<std::size_t> J;
  std::size_t pieces_total = 0;
  std::size_t pieces_feasible = 0;
  /// Candidates that failed the exact x^T y = x^T y^max check (always 0 in practice).
  std::size_t rejected = 0;
};

using Certificate = std::variant<IterationTrace, MinimalPointWitness, ClosedFormWitness, PartitionWitness>;

struct BilevelSolution {
  TropVector x;
  TropVector y;
  TropScalar value;
  Method method = Method::ClosedForm;
  Certificate certificate;
  /// Leaf systems solved across all selector enumerations.
  std::uint64_t leaves_solved = 0;
};

struct SolverOptions {
  lp::EnumerateOptions enumerate;
  /// Solve each partition piece as one joint x/y system instead of two
  /// independent blocks.
  bool joint_pieces = false;
  /// Worker threads for independent subproblems (pieces, candidates).
  unsigned threads = 1;
};

/// Exact lower-level optimality of y for x. Throws InfeasiblePoint when
/// x is not in TP1 or y is not in TP2.
bool check_lower_optimality(const BilevelInstance& inst, const TropVector& x, const TropVector& y);

/// Value of the lower level at x: phi(x) = min/max { x^T y : y in TP2 }.
TropScalar lower_value(const BilevelInstance& inst, const TropVector& x);

/// Relaxed problem of cut generation with cut points `cuts` (empty: the
/// initial relaxation over TP1 x TP2).
struct IterativeSystem {
  lp::SelectorSystem system;
  lp::MembershipBlock x;
  lp::MembershipBlock y;
};
IterativeSystem build_iterative_system(const BilevelInstance& inst, std::span<const TropVector> cuts);

/// Cut generation for min-min and max-min.
BilevelSolution solve_iterative(const BilevelInstance& inst, const SolverOptions& options = {});

/// Minimal-point enumeration for min-min.
BilevelSolution solve_enumerate(const BilevelInstance& inst, const SolverOptions& options = {});

/// (x^max, y^max) for max-max.
BilevelSolution solve_maxmax(const BilevelInstance& inst);

/// x*_i = sum_{k != i} ymax_k. Throws UnsupportedInstance on a BOTTOM entry.
TropVector x_star(const TropVector& ymax);

/// One (I, J) piece: closed x-side shift constraints and the y-side
/// tropical equality max_{i in I} (c_i + y_i) = C.
struct PartitionPiece {
  struct ShiftConstraint {
    std::size_t lhs;  // x_lhs - x*_lhs (<= | =) x_rhs - x*_rhs
    std::size_t rhs;
    bool equality;
  };

  std::vector<std::size_t> I;
  std::vector<std::size_t> J;
  TropVector xstar;
  TropVector ymax;
  std::vector<ShiftConstraint> x_constraints;
  /// c_i = sum_{k != i} ymax_k, aligned with I.
  std::vector<Rational> y_coeffs;
  /// C = sum_k ymax_k
  Rational y_level{0};

  bool contains_x(const TropVector& x) const;
  bool contains_y(const TropVector& y) const;
  std::string describe_x() const;
  std::string describe_y() const;
};

/// Throws PreconditionError when I is empty or (I, J) is not a partition.
PartitionPiece partition_piece(const BilevelInstance& inst, std::vector<std::size_t> I, std::vector<std::size_t> J);

/// All pieces with nonempty I, ordered by the bitmask of I (bit i set for i in I).
std::vector<PartitionPiece> all_partition_pieces(const BilevelInstance& inst);

enum class PieceSide { X, Y, Joint };
/// Selector system for one side of a piece, or the joint system.
IterativeSystem build_piece_system(const BilevelInstance& inst, const PartitionPiece& piece, PieceSide side);

/// Partition decomposition for min-max (and max-max with the same machinery).
BilevelSolution solve_minmax(const BilevelInstance& inst, const SolverOptions& options = {});

enum class Algorithm { Auto, Iterative, Enumerate, Decompose, ClosedForm };
std::optional<Algorithm> parse_algorithm(std::string_view text);
const char* to_string(Algorithm a);

/// Resolves Auto and checks compatibility; throws UnsupportedInstance on
/// a combination the method does not cover.
Algorithm resolve_algorithm(Variant v, Algorithm a);

BilevelSolution solve(const BilevelInstance& inst, Algorithm algorithm, const SolverOptions& options = {});

}  // namespace tropbilevel
