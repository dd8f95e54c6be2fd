#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tropbilevel/rational.hpp"

namespace tropbilevel::lp {

using VarId = std::size_t;

struct VarInfo {
  std::string name;
  Rational lo;
  Rational hi;
};

/// Named continuous variables, each with a finite box.
class VarRegistry {
 public:
  VarId add(std::string name, Rational lo, Rational hi);
  std::optional<VarId> find(std::string_view name) const;

  std::size_t size() const { return vars_.size(); }
  const VarInfo& operator[](VarId id) const { return vars_[id]; }
  const std::vector<VarInfo>& vars() const { return vars_; }

 private:
  std::vector<VarInfo> vars_;
  std::unordered_map<std::string, VarId> by_name_;
};

/// sum_k coeff_k * v_k + constant
struct LinTerm {
  std::map<VarId, Rational> coeffs;
  Rational constant{0};

  static LinTerm var(VarId v, const Rational& coeff = 1);
  static LinTerm constant_term(const Rational& c);

  LinTerm& operator+=(const LinTerm& o);
  LinTerm& operator-=(const LinTerm& o);
  LinTerm& operator*=(const Rational& s);
  friend LinTerm operator+(LinTerm a, const LinTerm& b) { return a += b; }
  friend LinTerm operator-(LinTerm a, const LinTerm& b) { return a -= b; }
  friend LinTerm operator+(LinTerm a, const Rational& c) {
    a.constant += c;
    return a;
  }

  bool is_constant() const { return coeffs.empty(); }
  Rational evaluate(std::span<const Rational> assignment) const;
  /// Drops zero coefficients.
  void prune();
};

enum class Relation { LessEq, Equal };

struct LinConstraint {
  LinTerm lhs;
  Relation rel = Relation::LessEq;
  LinTerm rhs;

  /// lhs - rhs, to be read as "(<= | =) 0".
  LinTerm normalized() const;
  bool satisfied_by(std::span<const Rational> assignment) const;
};

inline LinConstraint leq(LinTerm lhs, LinTerm rhs) { return {std::move(lhs), Relation::LessEq, std::move(rhs)}; }
inline LinConstraint eq(LinTerm lhs, LinTerm rhs) { return {std::move(lhs), Relation::Equal, std::move(rhs)}; }

struct Interval {
  Rational lo;
  Rational hi;
};

/// Range of a term over the registry's box.
Interval bounds(const LinTerm& term, const VarRegistry& registry);

std::string to_string(const LinTerm& term, const VarRegistry& registry);
std::string to_string(const LinConstraint& c, const VarRegistry& registry);

}  // namespace tropbilevel::lp
