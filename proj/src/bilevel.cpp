#include "tropbilevel/bilevel.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>

#include "tropbilevel/errors.hpp"

namespace tropbilevel {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::MinMin:
      return "min-min";
    case Variant::MaxMin:
      return "max-min";
    case Variant::MinMax:
      return "min-max";
    case Variant::MaxMax:
      return "max-max";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view text) {
  for (Variant v : {Variant::MinMin, Variant::MaxMin, Variant::MinMax, Variant::MaxMax})
    if (text == to_string(v)) return v;
  return std::nullopt;
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Iterative:
      return "iterative";
    case Method::Enumerate:
      return "enumerate";
    case Method::ClosedForm:
      return "closed-form";
    case Method::Decompose:
      return "decompose";
  }
  return "?";
}

BilevelInstance::BilevelInstance(TropPolytopeV tp1_, TropPolytopeV tp2_, TropVector a_, TropVector b_, Variant v)
    : tp1(std::move(tp1_)), tp2(std::move(tp2_)), a(std::move(a_)), b(std::move(b_)), variant(v) {
  const std::size_t n = tp1.dim();
  if (tp2.dim() != n || a.dim() != n || b.dim() != n)
    throw DimensionError("bilevel instance: TP1, TP2, a and b must share one dimension");
}

TropScalar BilevelInstance::objective(const TropVector& x, const TropVector& y) const {
  return oplus(tdot(a, x), tdot(b, y));
}

TropScalar lower_value(const BilevelInstance& inst, const TropVector& x) {
  if (lower_minimizes(inst.variant)) return phi_and_argmin(inst.tp2, x).value;
  return tdot(x, greatest_point(inst.tp2));
}

bool check_lower_optimality(const BilevelInstance& inst, const TropVector& x, const TropVector& y) {
  if (!contains(inst.tp1, x).member) throw InfeasiblePoint("x = " + x.str() + " is not in TP1");
  if (!contains(inst.tp2, y).member) throw InfeasiblePoint("y = " + y.str() + " is not in TP2");
  return tdot(x, y) == lower_value(inst, x);
}

namespace {

lp::Sense upper_sense(const BilevelInstance& inst) {
  return upper_minimizes(inst.variant) ? lp::Sense::Minimize : lp::Sense::Maximize;
}

void note_vector(lp::SelectorSystem& sys, const TropVector& v) {
  for (const auto& e : v)
    if (e.is_finite()) sys.note_datum(e.value());
}

TropVector extract(const std::vector<Rational>& assignment, std::span<const lp::VarId> ids) {
  std::vector<TropScalar> out;
  out.reserve(ids.size());
  for (auto id : ids) out.emplace_back(assignment[id]);
  return TropVector(std::move(out));
}

struct Candidate {
  TropScalar value;
  TropVector x;
  TropVector y;
};

bool better(const Candidate& c, const Candidate& d, bool minimize) {
  if (c.value != d.value) return minimize ? c.value < d.value : c.value > d.value;
  if (c.x != d.x) return c.x < d.x;
  return c.y < d.y;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Results keep
// their index, so any reduction over them is schedule independent.
template <class Result>
std::vector<Result> run_indexed(std::size_t count, unsigned threads, const std::function<Result(std::size_t)>& fn) {
  std::vector<Result> out(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

IterativeSystem build_iterative_system(const BilevelInstance& inst, std::span<const TropVector> cuts) {
  IterativeSystem out;
  auto& sys = out.system;
  out.x = lp::encode_membership(sys, inst.tp1, "x");
  out.y = lp::encode_membership(sys, inst.tp2, "y");
  for (std::size_t k = 0; k < cuts.size(); ++k)
    lp::encode_cut(sys, out.x.coords, out.y.coords, cuts[k], "cut" + std::to_string(k + 1));
  note_vector(sys, inst.a);
  note_vector(sys, inst.b);
  auto terms = lp::tropical_terms(inst.a, out.x.coords);
  auto yterms = lp::tropical_terms(inst.b, out.y.coords);
  terms.insert(terms.end(), yterms.begin(), yterms.end());
  lp::encode_max_objective(sys, terms, upper_sense(inst), "t");
  return out;
}

BilevelSolution solve_iterative(const BilevelInstance& inst, const SolverOptions& options) {
  if (!lower_minimizes(inst.variant))
    throw UnsupportedInstance("cut generation handles min-min and max-min, not " + std::string(to_string(inst.variant)));

  BilevelSolution sol;
  sol.method = Method::Iterative;
  IterationTrace trace;
  for (;;) {
    IterativeSystem step = build_iterative_system(inst, trace.cuts);
    lp::EnumerateResult r = lp::enumerate_solve(step.system, options.enumerate);
    ++trace.iterations;
    sol.leaves_solved += r.leaves_solved;
    if (r.status != lp::SolveStatus::Optimal)
      throw InfeasibleProblem("relaxed problem at step " + std::to_string(trace.iterations - 1) + " is " +
                              lp::to_string(r.status));
    TropVector x = extract(r.assignment, step.x.coords);
    TropVector y = extract(r.assignment, step.y.coords);
    if (check_lower_optimality(inst, x, y)) {
      sol.value = inst.objective(x, y);
      sol.x = std::move(x);
      sol.y = std::move(y);
      break;
    }
    TropVector z = phi_and_argmin(inst.tp2, x).argmin;
    if (std::find(trace.cuts.begin(), trace.cuts.end(), z) != trace.cuts.end())
      throw std::logic_error("cut generation repeated cut point " + z.str());
    trace.cuts.push_back(std::move(z));
  }
  sol.certificate = std::move(trace);
  return sol;
}

BilevelSolution solve_enumerate(const BilevelInstance& inst, const SolverOptions& options) {
  if (inst.variant != Variant::MinMin)
    throw UnsupportedInstance("minimal-point enumeration handles min-min only, not " +
                              std::string(to_string(inst.variant)));
  const std::vector<TropVector> minimal = minimal_points(inst.tp2);

  struct Outcome {
    std::optional<Candidate> candidate;
    std::uint64_t leaves = 0;
  };
  auto solve_candidate = [&](std::size_t c) -> Outcome {
    const TropVector& fixed_y = minimal[c];
    lp::SelectorSystem sys;
    lp::MembershipBlock xb = lp::encode_membership(sys, inst.tp1, "x");
    const auto lhs = lp::tropical_terms(fixed_y, xb.coords);
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      note_vector(sys, minimal[k]);
      const auto rhs = lp::tropical_terms(minimal[k], xb.coords);
      lp::encode_tropical_leq(sys, lhs, rhs, "cut" + std::to_string(k + 1));
    }
    note_vector(sys, inst.a);
    note_vector(sys, inst.b);
    auto terms = lp::tropical_terms(inst.a, xb.coords);
    const TropScalar by = tdot(inst.b, fixed_y);
    if (by.is_finite()) terms.push_back(lp::LinTerm::constant_term(by.value()));
    lp::encode_max_objective(sys, terms, lp::Sense::Minimize, "t");

    lp::EnumerateResult r = lp::enumerate_solve(sys, options.enumerate);
    Outcome out;
    out.leaves = r.leaves_solved;
    if (r.status != lp::SolveStatus::Optimal) return out;
    TropVector x = extract(r.assignment, xb.coords);
    out.candidate = Candidate{inst.objective(x, fixed_y), std::move(x), fixed_y};
    return out;
  };

  auto outcomes = run_indexed<Outcome>(minimal.size(), options.threads, solve_candidate);

  BilevelSolution sol;
  sol.method = Method::Enumerate;
  std::optional<Candidate> best;
  for (auto& o : outcomes) {
    sol.leaves_solved += o.leaves;
    if (o.candidate && (!best || better(*o.candidate, *best, true))) best = std::move(o.candidate);
  }
  if (!best) throw InfeasibleProblem("no minimal point of TP2 admits a feasible x");
  sol.x = best->x;
  sol.y = best->y;
  sol.value = best->value;
  sol.certificate = MinimalPointWitness{best->y, minimal.size()};
  return sol;
}

BilevelSolution solve_maxmax(const BilevelInstance& inst) {
  if (inst.variant != Variant::MaxMax)
    throw UnsupportedInstance("the closed form covers max-max only, not " + std::string(to_string(inst.variant)));
  BilevelSolution sol;
  sol.method = Method::ClosedForm;
  sol.x = greatest_point(inst.tp1);
  sol.y = greatest_point(inst.tp2);
  sol.value = inst.objective(sol.x, sol.y);
  sol.certificate = ClosedFormWitness{sol.x, sol.y};
  return sol;
}

TropVector x_star(const TropVector& ymax) {
  if (!ymax.all_finite())
    throw UnsupportedInstance("partition decomposition needs a finite greatest point, got " + ymax.str());
  Rational total = 0;
  for (const auto& e : ymax) total += e.value();
  std::vector<TropScalar> out;
  out.reserve(ymax.dim());
  for (const auto& e : ymax) out.emplace_back(Rational(total - e.value()));
  return TropVector(std::move(out));
}

// ---------------------------------------------------------------------------
// Partition pieces

namespace {

TropScalar shifted(const TropVector& x, const TropVector& xstar, std::size_t i) {
  return otimes(x[i], TropScalar(Rational(-xstar[i].value())));
}

std::string coord(const char* name, std::size_t i) { return std::string(name) + "_" + std::to_string(i + 1); }

std::string shift_text(const char* name, std::size_t i, const TropScalar& s) {
  const Rational& v = s.value();
  if (v == 0) return coord(name, i);
  return coord(name, i) + (v > 0 ? " - " + to_string(v) : " + " + to_string(Rational(-v)));
}

}  // namespace

bool PartitionPiece::contains_x(const TropVector& x) const {
  if (x.dim() != xstar.dim()) throw DimensionError("piece: x has the wrong dimension");
  for (const auto& c : x_constraints) {
    const TropScalar l = shifted(x, xstar, c.lhs);
    const TropScalar r = shifted(x, xstar, c.rhs);
    if (c.equality ? l != r : l > r) return false;
  }
  return true;
}

bool PartitionPiece::contains_y(const TropVector& y) const {
  if (y.dim() != ymax.dim()) throw DimensionError("piece: y has the wrong dimension");
  TropScalar acc = TropScalar::bottom();
  for (std::size_t k = 0; k < I.size(); ++k) acc = oplus(acc, otimes(TropScalar(y_coeffs[k]), y[I[k]]));
  return acc == TropScalar(y_level);
}

std::string PartitionPiece::describe_x() const {
  std::string out;
  for (const auto& c : x_constraints) {
    if (!out.empty()) out += ", ";
    out += shift_text("x", c.lhs, xstar[c.lhs]) + (c.equality ? " = " : " <= ") + shift_text("x", c.rhs, xstar[c.rhs]);
  }
  return out.empty() ? "(no constraint)" : out;
}

std::string PartitionPiece::describe_y() const {
  if (I.size() == 1) return coord("y", I[0]) + " = " + ymax[I[0]].str();
  std::string out = "max(";
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (k) out += ", ";
    out += to_string(y_coeffs[k]) + " + " + coord("y", I[k]);
  }
  return out + ") = " + to_string(y_level);
}

PartitionPiece partition_piece(const BilevelInstance& inst, std::vector<std::size_t> I, std::vector<std::size_t> J) {
  const std::size_t n = inst.dim();
  if (I.empty()) throw PreconditionError("partition piece needs a nonempty I (the y-side equality is -inf = C otherwise)");
  std::sort(I.begin(), I.end());
  std::sort(J.begin(), J.end());
  std::vector<int> seen(n, 0);
  for (auto i : I) {
    if (i >= n) throw PreconditionError("index outside [n] in I");
    ++seen[i];
  }
  for (auto j : J) {
    if (j >= n) throw PreconditionError("index outside [n] in J");
    ++seen[j];
  }
  if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; }))
    throw PreconditionError("I and J must partition the coordinate set");

  PartitionPiece piece;
  piece.ymax = greatest_point(inst.tp2);
  piece.xstar = x_star(piece.ymax);
  piece.I = std::move(I);
  piece.J = std::move(J);
  for (std::size_t t = 1; t < piece.I.size(); ++t) piece.x_constraints.push_back({piece.I[0], piece.I[t], true});
  for (auto j : piece.J)
    for (auto i : piece.I) piece.x_constraints.push_back({j, i, false});
  for (const auto& e : piece.ymax) piece.y_level += e.value();
  for (auto i : piece.I) piece.y_coeffs.push_back(piece.xstar[i].value());
  return piece;
}

std::vector<PartitionPiece> all_partition_pieces(const BilevelInstance& inst) {
  const std::size_t n = inst.dim();
  if (n >= 20) throw BudgetExceeded("partition decomposition over 2^" + std::to_string(n) + " pieces");
  std::vector<PartitionPiece> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> I, J;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? I : J).push_back(i);
    out.push_back(partition_piece(inst, std::move(I), std::move(J)));
  }
  return out;
}

IterativeSystem build_piece_system(const BilevelInstance& inst, const PartitionPiece& piece, PieceSide side) {
  IterativeSystem out;
  auto& sys = out.system;
  std::vector<lp::LinTerm> terms;
  if (side != PieceSide::Y) {
    out.x = lp::encode_membership(sys, inst.tp1, "x");
    note_vector(sys, piece.xstar);
    note_vector(sys, inst.a);
    auto shift = [&](std::size_t i) { return lp::LinTerm::var(out.x.coords[i]) + Rational(-piece.xstar[i].value()); };
    for (const auto& c : piece.x_constraints)
      sys.add_fixed(c.equality ? lp::eq(shift(c.lhs), shift(c.rhs)) : lp::leq(shift(c.lhs), shift(c.rhs)));
    auto a_terms = lp::tropical_terms(inst.a, out.x.coords);
    terms.insert(terms.end(), a_terms.begin(), a_terms.end());
  }
  if (side != PieceSide::X) {
    out.y = lp::encode_membership(sys, inst.tp2, "y");
    note_vector(sys, piece.ymax);
    note_vector(sys, inst.b);
    std::vector<lp::LinTerm> lhs;
    for (std::size_t k = 0; k < piece.I.size(); ++k)
      lhs.push_back(lp::LinTerm::var(out.y.coords[piece.I[k]]) + piece.y_coeffs[k]);
    const std::vector<lp::LinTerm> rhs{lp::LinTerm::constant_term(piece.y_level)};
    lp::encode_tropical_eq(sys, lhs, rhs, "level");
    auto b_terms = lp::tropical_terms(inst.b, out.y.coords);
    terms.insert(terms.end(), b_terms.begin(), b_terms.end());
  }
  lp::encode_max_objective(sys, terms, upper_sense(inst), "t");
  return out;
}

BilevelSolution solve_minmax(const BilevelInstance& inst, const SolverOptions& options) {
  if (lower_minimizes(inst.variant))
    throw UnsupportedInstance("partition decomposition needs a max lower level, not " +
                              std::string(to_string(inst.variant)));
  const std::vector<PartitionPiece> pieces = all_partition_pieces(inst);
  const TropVector& ymax = pieces.front().ymax;
  const bool minimize = upper_minimizes(inst.variant);

  struct Outcome {
    std::optional<Candidate> candidate;
    bool rejected = false;
    std::uint64_t leaves = 0;
  };
  auto solve_piece = [&](std::size_t p) -> Outcome {
    const PartitionPiece& piece = pieces[p];
    Outcome out;
    TropVector x, y;
    if (options.joint_pieces) {
      IterativeSystem joint = build_piece_system(inst, piece, PieceSide::Joint);
      auto r = lp::enumerate_solve(joint.system, options.enumerate);
      out.leaves += r.leaves_solved;
      if (r.status != lp::SolveStatus::Optimal) return out;
      x = extract(r.assignment, joint.x.coords);
      y = extract(r.assignment, joint.y.coords);
    } else {
      // The constraints split into an x-block and a y-block, so
      // opt max(g(x), h(y)) = max(opt g, opt h).
      IterativeSystem xs = build_piece_system(inst, piece, PieceSide::X);
      auto rx = lp::enumerate_solve(xs.system, options.enumerate);
      out.leaves += rx.leaves_solved;
      if (rx.status != lp::SolveStatus::Optimal) return out;
      IterativeSystem ys = build_piece_system(inst, piece, PieceSide::Y);
      auto ry = lp::enumerate_solve(ys.system, options.enumerate);
      out.leaves += ry.leaves_solved;
      if (ry.status != lp::SolveStatus::Optimal) return out;
      x = extract(rx.assignment, xs.x.coords);
      y = extract(ry.assignment, ys.y.coords);
    }
    if (tdot(x, y) != tdot(x, ymax) || !piece.contains_x(x) || !piece.contains_y(y)) {
      out.rejected = true;
      return out;
    }
    TropScalar value = inst.objective(x, y);
    out.candidate = Candidate{std::move(value), std::move(x), std::move(y)};
    return out;
  };

  auto outcomes = run_indexed<Outcome>(pieces.size(), options.threads, solve_piece);

  BilevelSolution sol;
  sol.method = Method::Decompose;
  PartitionWitness witness;
  witness.pieces_total = pieces.size();
  std::optional<Candidate> best;
  std::size_t best_piece = 0;
  for (std::size_t p = 0; p < outcomes.size(); ++p) {
    auto& o = outcomes[p];
    sol.leaves_solved += o.leaves;
    if (o.rejected) ++witness.rejected;
    if (!o.candidate) continue;
    ++witness.pieces_feasible;
    if (!best || better(*o.candidate, *best, minimize)) {
      best = std::move(o.candidate);
      best_piece = p;
    }
  }
  if (!best) throw InfeasibleProblem("every partition piece is infeasible");
  witness.I = pieces[best_piece].I;
  witness.J = pieces[best_piece].J;
  sol.x = best->x;
  sol.y = best->y;
  sol.value = best->value;
  sol.certificate = std::move(witness);
  return sol;
}

// ---------------------------------------------------------------------------
// Dispatch

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  for (Algorithm a : {Algorithm::Auto, Algorithm::Iterative, Algorithm::Enumerate, Algorithm::Decompose,
                      Algorithm::ClosedForm})
    if (text == to_string(a)) return a;
  return std::nullopt;
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Auto:
      return "auto";
    case Algorithm::Iterative:
      return "iterative";
    case Algorithm::Enumerate:
      return "enumerate";
    case Algorithm::Decompose:
      return "decompose";
    case Algorithm::ClosedForm:
      return "closed-form";
  }
  return "?";
}

Algorithm resolve_algorithm(Variant v, Algorithm a) {
  if (a == Algorithm::Auto) {
    switch (v) {
      case Variant::MinMin:
        return Algorithm::Enumerate;
      case Variant::MaxMin:
        return Algorithm::Iterative;
      case Variant::MinMax:
        return Algorithm::Decompose;
      case Variant::MaxMax:
        return Algorithm::ClosedForm;
    }
  }
  bool ok = false;
  switch (a) {
    case Algorithm::Iterative:
      ok = lower_minimizes(v);
      break;
    case Algorithm::Enumerate:
      ok = v == Variant::MinMin;
      break;
    case Algorithm::Decompose:
      ok = !lower_minimizes(v);
      break;
    case Algorithm::ClosedForm:
      ok = v == Variant::MaxMax;
      break;
    case Algorithm::Auto:
      break;
  }
  if (!ok)
    throw UnsupportedInstance(std::string("algorithm ") + to_string(a) + " does not apply to variant " + to_string(v));
  return a;
}

BilevelSolution solve(const BilevelInstance& inst, Algorithm algorithm, const SolverOptions& options) {
  switch (resolve_algorithm(inst.variant, algorithm)) {
    case Algorithm::Iterative:
      return solve_iterative(inst, options);
    case Algorithm::Enumerate:
      return solve_enumerate(inst, options);
    case Algorithm::Decompose:
      return solve_minmax(inst, options);
    case Algorithm::ClosedForm:
    case Algorithm::Auto:
      break;
  }
  return solve_maxmax(inst);
}

}  // namespace tropbilevel
