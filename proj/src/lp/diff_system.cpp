#include "tropbilevel/lp/diff_system.hpp"

namespace tropbilevel::lp {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

namespace {

struct Distances {
  std::vector<Rational> dist;
  std::vector<bool> reached;
  bool negative_cycle = false;
};

// Bellman-Ford. With `source` unset every node starts at distance 0, which
// is the virtual-source variant used for feasibility.
Distances shortest_paths(std::size_t nodes, const std::vector<DiffEdge>& edges, std::optional<std::size_t> source,
                         bool reversed) {
  Distances d;
  d.dist.assign(nodes, Rational(0));
  d.reached.assign(nodes, !source.has_value());
  if (source) d.reached[*source] = true;

  for (std::size_t round = 0; round <= nodes; ++round) {
    bool changed = false;
    for (const auto& e : edges) {
      const std::size_t from = reversed ? e.to : e.from;
      const std::size_t to = reversed ? e.from : e.to;
      if (!d.reached[from]) continue;
      Rational cand = d.dist[from] + e.weight;
      if (!d.reached[to] || cand < d.dist[to]) {
        d.dist[to] = std::move(cand);
        d.reached[to] = true;
        changed = true;
      }
    }
    if (!changed) return d;
  }
  d.negative_cycle = true;
  return d;
}

bool all_reached(const Distances& d) {
  for (bool r : d.reached)
    if (!r) return false;
  return true;
}

std::vector<Rational> potential_solution(const DiffSystem& s) {
  Distances d = shortest_paths(s.num_vars() + 1, s.edges(), std::nullopt, false);
  std::vector<Rational> x(s.num_vars());
  for (std::size_t v = 0; v < s.num_vars(); ++v) x[v] = d.dist[v] - d.dist[s.zero()];
  return x;
}

}  // namespace

LeafResult solve_diff_system(const DiffSystem& system, const Objective& objective) {
  const std::size_t nodes = system.num_vars() + 1;
  LeafResult out;

  const bool minimize = objective.sense == Sense::Minimize;
  // Greatest solution: x_v = dist(zero -> v). Least: x_v = -dist(v -> zero).
  auto extreme = [&](bool least) {
    Distances d = shortest_paths(nodes, system.edges(), system.zero(), least);
    if (least)
      for (auto& v : d.dist) v = -v;
    return d;
  };

  Distances best = extreme(objective.var ? minimize : true);
  // A negative cycle reachable from zero shows up here; when every node is
  // reachable there is nothing else to check.
  if (best.negative_cycle ||
      (!all_reached(best) && shortest_paths(nodes, system.edges(), std::nullopt, false).negative_cycle)) {
    out.status = SolveStatus::Infeasible;
    return out;
  }
  if (objective.var && !best.reached[*objective.var]) {
    out.status = SolveStatus::Unbounded;
    return out;
  }
  out.status = SolveStatus::Optimal;
  if (all_reached(best)) {
    out.assignment.assign(best.dist.begin(), best.dist.begin() + static_cast<std::ptrdiff_t>(system.num_vars()));
  } else if (!objective.var) {
    Distances other = extreme(false);
    if (all_reached(other))
      out.assignment.assign(other.dist.begin(), other.dist.begin() + static_cast<std::ptrdiff_t>(system.num_vars()));
    else
      out.assignment = potential_solution(system);
  } else {
    DiffSystem pinned = system;
    const Rational& v = best.dist[*objective.var];
    pinned.add_upper(*objective.var, v);
    pinned.add_lower(*objective.var, v);
    out.assignment = potential_solution(pinned);
  }
  if (objective.var) out.value = out.assignment[*objective.var];
  return out;
}

std::optional<std::vector<DiffEdge>> as_difference(const LinConstraint& c, std::size_t zero) {
  const LinTerm d = c.normalized();  // sum a_k v_k + const (<= | =) 0
  std::size_t pos = zero;
  std::size_t neg = zero;
  for (const auto& [v, a] : d.coeffs) {
    if (a == 1 && pos == zero) {
      pos = v;
    } else if (a == -1 && neg == zero) {
      neg = v;
    } else {
      return std::nullopt;
    }
  }
  // x_pos - x_neg <= -const
  std::vector<DiffEdge> edges;
  const Rational bound = -d.constant;
  if (pos == zero && neg == zero) {
    // Constant constraint: encode as a self-contained zero loop.
    const bool ok = c.rel == Relation::Equal ? bound == 0 : bound >= 0;
    edges.push_back({zero, zero, ok ? Rational(0) : Rational(-1)});
    return edges;
  }
  edges.push_back({neg, pos, bound});
  if (c.rel == Relation::Equal) edges.push_back({pos, neg, -bound});
  return edges;
}

std::vector<DiffEdge> box_edges(const VarRegistry& registry) {
  std::vector<DiffEdge> edges;
  edges.reserve(2 * registry.size());
  const std::size_t zero = registry.size();
  for (VarId v = 0; v < registry.size(); ++v) {
    edges.push_back({zero, v, registry[v].hi});
    edges.push_back({v, zero, -registry[v].lo});
  }
  return edges;
}

}  // namespace tropbilevel::lp
