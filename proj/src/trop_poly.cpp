#include "tropbilevel/trop_poly.hpp"

#include <algorithm>
#include <optional>

#include "tropbilevel/errors.hpp"

namespace tropbilevel {

TropPolytopeV::TropPolytopeV(std::vector<TropVector> generators) {
  if (generators.empty()) throw PreconditionError("tropical polytope needs at least one generator");
  dim_ = generators.front().dim();
  if (dim_ == 0) throw DimensionError("tropical polytope of dimension 0");
  for (auto& g : generators) {
    if (g.dim() != dim_) throw DimensionError("generators of differing dimension");
    if (std::find(generators_.begin(), generators_.end(), g) == generators_.end()) generators_.push_back(std::move(g));
  }
}

bool TropPolytopeV::all_finite() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const TropVector& g) { return g.all_finite(); });
}

Membership contains(const TropPolytopeV& p, const TropVector& x) {
  if (x.dim() != p.dim()) throw DimensionError("contains: point and polytope dimension differ");

  Membership out;
  out.coefficients.reserve(p.size());
  for (const auto& g : p.generators()) {
    // lambda*_i = min_j (x_j - g_ij); nullopt stands for +inf.
    std::optional<TropScalar> residual;
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (g[j].is_bottom()) continue;  // no constraint from this coordinate
      const TropScalar term = x[j].is_bottom() ? TropScalar::bottom() : TropScalar(Rational(x[j].value() - g[j].value()));
      if (!residual || term < *residual) residual = term;
    }
    TropScalar capped = residual ? std::min(*residual, TropScalar::one()) : TropScalar::one();
    out.coefficients.push_back(capped);
  }

  TropScalar top = TropScalar::bottom();
  for (const auto& l : out.coefficients) top = oplus(top, l);
  if (top != TropScalar::one()) return out;
  out.member = tcomb(p.generators(), out.coefficients) == x;
  return out;
}

bool contains_h(const TropPolyhedronH& h, const TropVector& x) {
  if (x.dim() != h.dim) throw DimensionError("contains_h: point and polyhedron dimension differ");
  for (const auto& hs : h.halfspaces) {
    if (hs.a.dim() != h.dim || hs.b.dim() != h.dim) throw DimensionError("contains_h: halfspace dimension differs");
    if (oplus(tdot(hs.a, x), hs.alpha) > oplus(tdot(hs.b, x), hs.beta)) return false;
  }
  return true;
}

TropVector greatest_point(const TropPolytopeV& p) {
  TropVector acc = p.generator(0);
  for (const auto& g : p.generators()) acc = tmax(acc, g);
  return acc;
}

std::vector<TropVector> minimal_points(const TropPolytopeV& p) {
  std::vector<TropVector> out;
  const auto& gens = p.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool minimal = true;
    for (std::size_t k = 0; k < gens.size() && minimal; ++k) {
      if (k != i && dominates(gens[i], gens[k])) minimal = false;  // gens[k] <= gens[i], distinct
    }
    if (minimal) out.push_back(gens[i]);
  }
  return out;
}

TropPolytopeV extreme_generators(const TropPolytopeV& p) {
  std::vector<TropVector> kept = p.generators();
  for (std::size_t i = 0; i < kept.size();) {
    if (kept.size() == 1) break;
    std::vector<TropVector> others;
    others.reserve(kept.size() - 1);
    for (std::size_t k = 0; k < kept.size(); ++k)
      if (k != i) others.push_back(kept[k]);
    if (contains(TropPolytopeV(others), kept[i]).member) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return TropPolytopeV(std::move(kept));
}

PhiResult phi_and_argmin(const TropPolytopeV& p, const TropVector& x) {
  if (x.dim() != p.dim()) throw DimensionError("phi_and_argmin: point and polytope dimension differ");
  std::optional<PhiResult> best;
  for (const auto& m : minimal_points(p)) {
    TropScalar v = tdot(x, m);
    if (!best || v < best->value || (v == best->value && m < best->argmin)) best = PhiResult{v, m};
  }
  return *best;
}

}  // namespace tropbilevel
