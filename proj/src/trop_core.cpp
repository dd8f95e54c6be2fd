#include "tropbilevel/trop_core.hpp"

#include <ostream>
#include <stdexcept>

#include "tropbilevel/errors.hpp"

namespace tropbilevel {

TropScalar TropScalar::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s == "-inf" || s == "\xE2\x88\x92inf" || s == "BOTTOM") return bottom();
  return TropScalar(parse_decimal(s));
}

const Rational& TropScalar::value() const {
  if (bottom_) throw std::logic_error("value() of BOTTOM");
  return value_;
}

bool operator==(const TropScalar& a, const TropScalar& b) {
  if (a.bottom_ || b.bottom_) return a.bottom_ == b.bottom_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const TropScalar& a, const TropScalar& b) {
  if (a.bottom_ || b.bottom_) return !a.bottom_ <=> !b.bottom_;
  const int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string TropScalar::str() const { return bottom_ ? "-inf" : to_string(value_); }

TropScalar oplus(const TropScalar& a, const TropScalar& b) { return a < b ? b : a; }

TropScalar otimes(const TropScalar& a, const TropScalar& b) {
  if (a.is_bottom() || b.is_bottom()) return TropScalar::bottom();
  return TropScalar(Rational(a.value() + b.value()));
}

std::ostream& operator<<(std::ostream& os, const TropScalar& s) { return os << s.str(); }

bool TropVector::all_finite() const {
  for (const auto& e : entries_)
    if (e.is_bottom()) return false;
  return true;
}

std::strong_ordering operator<=>(const TropVector& a, const TropVector& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return a.dim() <=> b.dim();
}

std::string TropVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ", ";
    out += entries_[i].str();
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const TropVector& v) { return os << v.str(); }

namespace {

void require_same_dim(const TropVector& u, const TropVector& v, const char* what) {
  if (u.dim() != v.dim())
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(u.dim()) + " vs " +
                         std::to_string(v.dim()) + ")");
}

}  // namespace

TropScalar tdot(const TropVector& c, const TropVector& x) {
  require_same_dim(c, x, "tdot");
  TropScalar acc = TropScalar::bottom();
  for (std::size_t i = 0; i < c.dim(); ++i) acc = oplus(acc, otimes(c[i], x[i]));
  return acc;
}

TropVector tscale(const TropScalar& lambda, const TropVector& v) {
  std::vector<TropScalar> out;
  out.reserve(v.dim());
  for (const auto& e : v) out.push_back(otimes(lambda, e));
  return TropVector(std::move(out));
}

TropVector tmax(const TropVector& u, const TropVector& v) {
  require_same_dim(u, v, "tmax");
  std::vector<TropScalar> out;
  out.reserve(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) out.push_back(oplus(u[i], v[i]));
  return TropVector(std::move(out));
}

TropVector tcomb(std::span<const TropVector> generators, std::span<const TropScalar> lambdas) {
  if (generators.size() != lambdas.size())
    throw DimensionError("tcomb: " + std::to_string(generators.size()) + " generators but " +
                         std::to_string(lambdas.size()) + " coefficients");
  if (generators.empty()) throw PreconditionError("tcomb: empty generator list");
  TropScalar top = TropScalar::bottom();
  for (const auto& l : lambdas) top = oplus(top, l);
  if (top != TropScalar::one()) throw PreconditionError("tcomb: coefficients must have maximum 0, got " + top.str());

  TropVector acc = TropVector::filled(generators.front().dim(), TropScalar::bottom());
  for (std::size_t i = 0; i < generators.size(); ++i) acc = tmax(acc, tscale(lambdas[i], generators[i]));
  return acc;
}

bool dominates(const TropVector& x, const TropVector& y) {
  require_same_dim(x, y, "dominates");
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (x[i] < y[i]) return false;
  return true;
}

}  // namespace tropbilevel
