#include "tropbilevel/lp/linear.hpp"

#include <stdexcept>

#include "tropbilevel/errors.hpp"

namespace tropbilevel::lp {

VarId VarRegistry::add(std::string name, Rational lo, Rational hi) {
  if (by_name_.contains(name)) throw std::logic_error("variable registered twice: " + name);
  if (lo > hi) throw PreconditionError("empty box for variable " + name);
  const VarId id = vars_.size();
  by_name_.emplace(name, id);
  vars_.push_back({std::move(name), std::move(lo), std::move(hi)});
  return id;
}

std::optional<VarId> VarRegistry::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

LinTerm LinTerm::var(VarId v, const Rational& coeff) {
  LinTerm t;
  if (coeff != 0) t.coeffs.emplace(v, coeff);
  return t;
}

LinTerm LinTerm::constant_term(const Rational& c) {
  LinTerm t;
  t.constant = c;
  return t;
}

LinTerm& LinTerm::operator+=(const LinTerm& o) {
  for (const auto& [v, c] : o.coeffs) coeffs[v] += c;
  constant += o.constant;
  prune();
  return *this;
}

LinTerm& LinTerm::operator-=(const LinTerm& o) {
  for (const auto& [v, c] : o.coeffs) coeffs[v] -= c;
  constant -= o.constant;
  prune();
  return *this;
}

LinTerm& LinTerm::operator*=(const Rational& s) {
  for (auto& [v, c] : coeffs) c *= s;
  constant *= s;
  prune();
  return *this;
}

void LinTerm::prune() {
  std::erase_if(coeffs, [](const auto& kv) { return kv.second == 0; });
}

Rational LinTerm::evaluate(std::span<const Rational> assignment) const {
  Rational acc = constant;
  for (const auto& [v, c] : coeffs) acc += c * assignment[v];
  return acc;
}

LinTerm LinConstraint::normalized() const { return lhs - rhs; }

bool LinConstraint::satisfied_by(std::span<const Rational> assignment) const {
  const Rational d = normalized().evaluate(assignment);
  return rel == Relation::Equal ? d == 0 : d <= 0;
}

Interval bounds(const LinTerm& term, const VarRegistry& registry) {
  Interval out{term.constant, term.constant};
  for (const auto& [v, c] : term.coeffs) {
    const auto& info = registry[v];
    if (c > 0) {
      out.lo += c * info.lo;
      out.hi += c * info.hi;
    } else {
      out.lo += c * info.hi;
      out.hi += c * info.lo;
    }
  }
  return out;
}

std::string to_string(const LinTerm& term, const VarRegistry& registry) {
  std::string out;
  for (const auto& [v, c] : term.coeffs) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (mag != 1) out += tropbilevel::to_string(mag) + " ";
    out += registry[v].name;
  }
  if (term.constant != 0 || out.empty()) {
    if (out.empty()) {
      out = tropbilevel::to_string(term.constant);
    } else {
      out += term.constant < 0 ? " - " : " + ";
      out += tropbilevel::to_string(term.constant < 0 ? Rational(-term.constant) : term.constant);
    }
  }
  return out;
}

std::string to_string(const LinConstraint& c, const VarRegistry& registry) {
  return to_string(c.lhs, registry) + (c.rel == Relation::Equal ? " = " : " <= ") + to_string(c.rhs, registry);
}

}  // namespace tropbilevel::lp
