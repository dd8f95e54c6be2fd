#pragma once

// Max-plus arithmetic over the rationals extended with a bottom element.
//
//   a (+) b = max(a, b)      neutral element: BOTTOM (-inf)
//   a (x) b = a + b          neutral element: 0
//
// Everything here is exact; there is no floating point in this module.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tropbilevel/rational.hpp"

namespace tropbilevel {

class TropScalar {
 public:
  /// Zero of the rationals, i.e. the tropical one.
  TropScalar() = default;
  TropScalar(const Rational& value) : value_(value) { value_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  TropScalar(long value) : value_(value) {}             // NOLINT(google-explicit-constructor)
  TropScalar(int value) : value_(value) {}              // NOLINT(google-explicit-constructor)

  static TropScalar bottom() {
    TropScalar s;
    s.bottom_ = true;
    return s;
  }
  static TropScalar one() { return TropScalar(); }

  /// Parses a decimal string or "-inf".
  static TropScalar parse(std::string_view text);

  bool is_bottom() const { return bottom_; }
  bool is_finite() const { return !bottom_; }

  /// Finite value. Throws std::logic_error on BOTTOM.
  const Rational& value() const;

  friend bool operator==(const TropScalar& a, const TropScalar& b);
  friend std::strong_ordering operator<=>(const TropScalar& a, const TropScalar& b);

  std::string str() const;

 private:
  bool bottom_ = false;
  Rational value_{0};
};

/// a (+) b
TropScalar oplus(const TropScalar& a, const TropScalar& b);
/// a (x) b; BOTTOM is absorbing.
TropScalar otimes(const TropScalar& a, const TropScalar& b);

std::ostream& operator<<(std::ostream& os, const TropScalar& s);

class TropVector {
 public:
  TropVector() = default;
  explicit TropVector(std::vector<TropScalar> entries) : entries_(std::move(entries)) {}
  TropVector(std::initializer_list<TropScalar> entries) : entries_(entries) {}

  /// n copies of `fill`.
  static TropVector filled(std::size_t n, const TropScalar& fill) {
    return TropVector(std::vector<TropScalar>(n, fill));
  }

  std::size_t dim() const { return entries_.size(); }
  const TropScalar& operator[](std::size_t i) const { return entries_[i]; }
  TropScalar& operator[](std::size_t i) { return entries_[i]; }
  std::span<const TropScalar> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool all_finite() const;

  /// Lexicographic, BOTTOM first. Used for deterministic tie-breaking.
  friend bool operator==(const TropVector&, const TropVector&) = default;
  friend std::strong_ordering operator<=>(const TropVector& a, const TropVector& b);

  std::string str() const;

 private:
  std::vector<TropScalar> entries_;
};

std::ostream& operator<<(std::ostream& os, const TropVector& v);

/// Tropical scalar product max_i (c_i + x_i).
TropScalar tdot(const TropVector& c, const TropVector& x);

/// Tropical combination (+)_i lambda_i (x) g_i. Requires max_i lambda_i = 0.
TropVector tcomb(std::span<const TropVector> generators, std::span<const TropScalar> lambdas);

/// lambda (x) v, componentwise.
TropVector tscale(const TropScalar& lambda, const TropVector& v);

/// Componentwise max.
TropVector tmax(const TropVector& u, const TropVector& v);

/// x >= y componentwise (BOTTOM is least).
bool dominates(const TropVector& x, const TropVector& y);

}  // namespace tropbilevel
