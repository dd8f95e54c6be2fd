#include "tropbilevel/lp/encode.hpp"

#include <algorithm>
#include <string>

#include "tropbilevel/errors.hpp"

namespace tropbilevel::lp {

MembershipBlock encode_membership(SelectorSystem& sys, const TropPolytopeV& p, std::string_view prefix) {
  if (!p.all_finite())
    throw UnsupportedInstance("membership encoding needs finite generator coordinates (block " + std::string(prefix) +
                              ")");
  const std::size_t n = p.dim();
  const std::size_t m = p.size();
  sys.set_dimension(std::max(sys.dimension(), n));

  MembershipBlock block;
  std::vector<Rational> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = hi[j] = p.generator(0)[j].value();
    for (const auto& g : p.generators()) {
      const Rational& v = g[j].value();
      sys.note_datum(v);
      if (v < lo[j]) lo[j] = v;
      if (v > hi[j]) hi[j] = v;
    }
    block.coords.push_back(sys.add_var(std::string(prefix) + "_" + std::to_string(j + 1), lo[j], hi[j]));
  }
  for (std::size_t i = 0; i < m; ++i) {
    // lambda_i may sink until every x_j >= lambda_i + g_ij holds for any x in the box.
    Rational floor = lo[0] - p.generator(i)[0].value();
    for (std::size_t j = 1; j < n; ++j) floor = std::min(floor, Rational(lo[j] - p.generator(i)[j].value()));
    block.lambdas.push_back(
        sys.add_var("lam_" + std::string(prefix) + "_" + std::to_string(i + 1), std::min(floor, Rational(0)), 0));
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sys.add_fixed(leq(LinTerm::var(block.lambdas[i]) + p.generator(i)[j].value(), LinTerm::var(block.coords[j])));

  block.normalization_selector = sys.add_selector(std::string(prefix) + "_norm", m);
  for (std::size_t i = 0; i < m; ++i)
    sys.add_guarded(block.normalization_selector, i, leq(LinTerm{}, LinTerm::var(block.lambdas[i])));

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t sel = sys.add_selector(std::string(prefix) + "_coord_" + std::to_string(j + 1), m);
    block.coordinate_selectors.push_back(sel);
    for (std::size_t i = 0; i < m; ++i)
      sys.add_guarded(sel, i,
                      leq(LinTerm::var(block.coords[j]), LinTerm::var(block.lambdas[i]) + p.generator(i)[j].value()));
  }
  return block;
}

CutBlock encode_cut(SelectorSystem& sys, std::span<const VarId> x, std::span<const VarId> y, const TropVector& z,
                    std::string_view name) {
  const std::size_t n = z.dim();
  if (x.size() != n || y.size() != n) throw DimensionError("encode_cut: block and cut point dimension differ");
  if (!z.all_finite()) throw UnsupportedInstance("encode_cut: cut point needs finite coordinates");

  const auto& reg = sys.registry();
  Rational lo = reg[x[0]].lo + z[0].value();
  Rational hi = reg[x[0]].hi + z[0].value();
  for (std::size_t j = 0; j < n; ++j) {
    sys.note_datum(z[j].value());
    lo = std::max(lo, Rational(reg[x[j]].lo + z[j].value()));
    hi = std::max(hi, Rational(reg[x[j]].hi + z[j].value()));
  }

  CutBlock cut;
  cut.level = sys.add_var("t_" + std::string(name), lo, hi);
  for (std::size_t j = 0; j < n; ++j)
    sys.add_fixed(leq(LinTerm::var(x[j]) + z[j].value(), LinTerm::var(cut.level)));
  cut.selector = sys.add_selector(std::string(name), n);
  for (std::size_t s = 0; s < n; ++s)
    sys.add_guarded(cut.selector, s, leq(LinTerm::var(cut.level), LinTerm::var(x[s]) + z[s].value()));
  for (std::size_t i = 0; i < n; ++i)
    sys.add_fixed(leq(LinTerm::var(x[i]) + LinTerm::var(y[i]), LinTerm::var(cut.level)));
  return cut;
}

std::optional<std::size_t> encode_tropical_leq(SelectorSystem& sys, std::span<const LinTerm> lhs,
                                               std::span<const LinTerm> rhs, std::string_view name) {
  if (lhs.empty()) return std::nullopt;  // max of nothing is BOTTOM
  if (rhs.empty()) {
    sys.mark_infeasible("tropical inequality " + std::string(name) + " has an empty right-hand side");
    return std::nullopt;
  }
  if (rhs.size() == 1) {
    for (const auto& l : lhs) sys.add_fixed(leq(l, rhs[0]));
    return std::nullopt;
  }
  const std::size_t sel = sys.add_selector(std::string(name), rhs.size());
  for (std::size_t k = 0; k < rhs.size(); ++k)
    for (const auto& l : lhs) sys.add_guarded(sel, k, leq(l, rhs[k]));
  return sel;
}

void encode_tropical_eq(SelectorSystem& sys, std::span<const LinTerm> lhs, std::span<const LinTerm> rhs,
                        std::string_view name) {
  encode_tropical_leq(sys, lhs, rhs, std::string(name) + "_le");
  encode_tropical_leq(sys, rhs, lhs, std::string(name) + "_ge");
}

std::vector<LinTerm> tropical_terms(const TropVector& coeffs, std::span<const VarId> vars) {
  if (coeffs.dim() != vars.size()) throw DimensionError("tropical_terms: coefficient and variable counts differ");
  std::vector<LinTerm> out;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (coeffs[i].is_finite()) out.push_back(LinTerm::var(vars[i]) + coeffs[i].value());
  return out;
}

std::optional<VarId> encode_max_objective(SelectorSystem& sys, std::span<const LinTerm> terms, Sense sense,
                                          std::string_view name) {
  if (terms.empty()) return std::nullopt;
  Interval first = bounds(terms[0], sys.registry());
  Rational lo = first.lo;
  Rational hi = first.hi;
  for (const auto& t : terms) {
    const Interval b = bounds(t, sys.registry());
    lo = sense == Sense::Minimize ? std::max(lo, b.lo) : std::min(lo, b.lo);
    hi = std::max(hi, b.hi);
  }
  const VarId obj = sys.add_var(std::string(name), lo, hi);
  if (sense == Sense::Minimize) {
    for (const auto& t : terms) sys.add_fixed(leq(t, LinTerm::var(obj)));
  } else {
    const std::size_t sel = sys.add_selector(std::string(name) + "_term", terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k) sys.add_guarded(sel, k, leq(LinTerm::var(obj), terms[k]));
  }
  sys.set_objective({sense, obj});
  return obj;
}

}  // namespace tropbilevel::lp
