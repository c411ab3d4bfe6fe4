#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrp/instance.hpp"

namespace nrp {

/// A selected customer subset with its union cost and total profit.
///
/// Coverage is kept as a per-requirement count of selected customers whose
/// closure contains it, so both adding and removing a customer cost
/// O(|closure|). A requirement is covered iff its count is non-zero.
class Solution {
 public:
  explicit Solution(const Instance& instance)
      : instance_(&instance),
        member_(instance.customer_count(), 0),
        cover_count_(instance.requirement_count(), 0) {}

  const Instance& instance() const noexcept { return *instance_; }
  std::int64_t cost() const noexcept { return cost_; }
  std::int64_t profit() const noexcept { return profit_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool contains(std::size_t c) const { return member_[c] != 0; }
  bool covers(std::size_t r) const { return cover_count_[r] != 0; }

  /// Extra cost of adding customer c: requirements of its closure not yet
  /// covered.
  std::int64_t marginal_cost(std::size_t c) const {
    if (contains(c)) {
      throw std::logic_error("customer " + std::to_string(c + 1) + " is already selected");
    }
    std::int64_t extra = 0;
    for (auto r : instance_->closure(c)) {
      if (cover_count_[r] == 0) extra += instance_->requirement_cost(r);
    }
    return extra;
  }

  /// Cost saved by dropping customer c: requirements only c covers.
  std::int64_t removal_saving(std::size_t c) const {
    std::int64_t saving = 0;
    for (auto r : instance_->closure(c)) {
      if (cover_count_[r] == 1) saving += instance_->requirement_cost(r);
    }
    return saving;
  }

  /// Cost after replacing selected `out` by unselected `in`.
  std::int64_t swap_cost(std::size_t in, std::size_t out) const {
    const auto& in_bits = instance_->customer(in).closure_bits;
    std::int64_t freed = 0;
    for (auto r : instance_->closure(out)) {
      if (cover_count_[r] == 1 && !in_bits.test(r)) freed += instance_->requirement_cost(r);
    }
    return cost_ + marginal_cost(in) - freed;
  }

  void add(std::size_t c) {
    if (contains(c)) {
      throw std::logic_error("customer " + std::to_string(c + 1) + " is already selected");
    }
    for (auto r : instance_->closure(c)) {
      if (cover_count_[r]++ == 0) cost_ += instance_->requirement_cost(r);
    }
    member_[c] = 1;
    profit_ += instance_->customer(c).profit;
    ++size_;
  }

  void remove(std::size_t c) {
    if (!contains(c)) {
      throw std::logic_error("customer " + std::to_string(c + 1) + " is not selected");
    }
    for (auto r : instance_->closure(c)) {
      if (--cover_count_[r] == 0) cost_ -= instance_->requirement_cost(r);
    }
    member_[c] = 0;
    profit_ -= instance_->customer(c).profit;
    --size_;
  }

  /// Selected customers in increasing index order.
  std::vector<std::size_t> selected() const {
    std::vector<std::size_t> ids;
    ids.reserve(size_);
    for (std::size_t c = 0; c < member_.size(); ++c) {
      if (member_[c]) ids.push_back(c);
    }
    return ids;
  }

  RequirementSet covered() const {
    RequirementSet bits(cover_count_.size());
    for (std::size_t r = 0; r < cover_count_.size(); ++r) {
      if (cover_count_[r]) bits.set(r);
    }
    return bits;
  }

  friend bool operator==(const Solution& a, const Solution& b) {
    return a.instance_ == b.instance_ && a.member_ == b.member_;
  }

 private:
  const Instance* instance_;
  std::vector<char> member_;
  std::vector<std::uint32_t> cover_count_;
  std::int64_t cost_ = 0;
  std::int64_t profit_ = 0;
  std::size_t size_ = 0;
};

/// Builds the solution for a customer subset from scratch.
inline Solution evaluate(const Instance& instance, std::span<const std::size_t> selected) {
  Solution solution(instance);
  for (auto c : selected) {
    if (c >= instance.customer_count()) {
      throw std::out_of_range("customer index " + std::to_string(c) + " out of range");
    }
    solution.add(c);
  }
  return solution;
}

inline Solution evaluate(const Instance& instance, std::initializer_list<std::size_t> selected) {
  return evaluate(instance, std::span<const std::size_t>(selected.begin(), selected.size()));
}

inline std::int64_t marginal_cost(const Solution& solution, std::size_t customer) {
  return solution.marginal_cost(customer);
}

/// Recomputes cost from the covered set (union of closures) and checks that
/// it matches the cached values and the budget.
inline bool is_consistent(const Solution& solution) {
  const Instance& instance = solution.instance();
  RequirementSet covered(instance.requirement_count());
  std::int64_t profit = 0;
  for (auto c : solution.selected()) {
    covered |= instance.customer(c).closure_bits;
    profit += instance.customer(c).profit;
  }
  std::int64_t cost = 0;
  for (auto r = covered.find_first(); r != RequirementSet::npos; r = covered.find_next(r)) {
    cost += instance.requirement_cost(r);
  }
  return cost == solution.cost() && profit == solution.profit() && covered == solution.covered();
}

}  // namespace nrp
