#include "tropbilevel/lp/selector_system.hpp"

#include <limits>
#include <stdexcept>

#include "tropbilevel/errors.hpp"

namespace tropbilevel::lp {

std::size_t SelectorSystem::add_selector(std::string name, std::size_t domain) {
  if (domain == 0) throw PreconditionError("selector " + name + " has an empty domain");
  selectors_.push_back({std::move(name), domain});
  return selectors_.size() - 1;
}

void SelectorSystem::add_fixed(LinConstraint c) { fixed_.push_back(std::move(c)); }

void SelectorSystem::add_guarded(std::size_t selector, std::size_t index, LinConstraint c) {
  if (selector >= selectors_.size()) throw std::logic_error("guard references an undeclared selector");
  if (index >= selectors_[selector].domain) throw std::logic_error("guard index outside selector domain");
  guarded_[{selector, index}].push_back(std::move(c));
}

void SelectorSystem::mark_infeasible(std::string reason) {
  if (!infeasible_) infeasible_reason_ = std::move(reason);
  infeasible_ = true;
}

void SelectorSystem::note_datum(const Rational& v) {
  if (!data_range_) {
    data_range_ = Interval{v, v};
  } else {
    if (v < data_range_->lo) data_range_->lo = v;
    if (v > data_range_->hi) data_range_->hi = v;
  }
}

const std::vector<LinConstraint>& SelectorSystem::guarded(std::size_t selector, std::size_t index) const {
  static const std::vector<LinConstraint> kEmpty;
  auto it = guarded_.find({selector, index});
  return it == guarded_.end() ? kEmpty : it->second;
}

std::vector<LinConstraint> SelectorSystem::instantiate(std::span<const std::size_t> choice) const {
  if (choice.size() != selectors_.size()) throw DimensionError("choice vector length differs from selector count");
  std::vector<LinConstraint> out = fixed_;
  for (std::size_t s = 0; s < choice.size(); ++s) {
    const auto& g = guarded(s, choice[s]);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

std::uint64_t SelectorSystem::instantiation_count() const {
  std::uint64_t total = 1;
  for (const auto& s : selectors_) {
    if (total > std::numeric_limits<std::uint64_t>::max() / s.domain) return std::numeric_limits<std::uint64_t>::max();
    total *= s.domain;
  }
  return total;
}

}  // namespace tropbilevel::lp
