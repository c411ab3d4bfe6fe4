#pragma once

// Random multi-level NRP instances.
//
// Requirements are laid out in levels. Each requirement of level l is a
// prerequisite of between 0 and `max_children` distinct requirements of
// level l+1, so the dependency graph is acyclic by construction. Customers request a
// uniform number of distinct requirements drawn from all levels.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "nrp/instance.hpp"
#include "nrp/random.hpp"

namespace nrp {

struct LevelSpec {
  std::size_t count = 0;
  std::int64_t cost_min = 1;
  std::int64_t cost_max = 1;
  std::size_t max_children = 0;
  friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

struct GenSpec {
  std::string name;
  std::vector<LevelSpec> levels;
  std::size_t customer_count = 0;
  std::size_t request_min = 1;
  std::size_t request_max = 1;
  std::int64_t profit_min = 1;
  std::int64_t profit_max = 30;

  std::size_t requirement_count() const {
    std::size_t total = 0;
    for (const auto& level : levels) total += level.count;
    return total;
  }

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

inline const std::vector<std::string>& builtin_spec_names() {
  static const std::vector<std::string> names{"NRP-1", "NRP-2", "NRP-3", "NRP-4", "NRP-5"};
  return names;
}

/// The five instance families of the classic NRP benchmark recipe.
inline GenSpec builtin_spec(std::string_view name) {
  if (name == "NRP-1") return {"NRP-1", {{20, 1, 5, 8}, {40, 2, 8, 2}, {80, 5, 10, 0}}, 100, 1, 5, 1, 30};
  if (name == "NRP-2") {
    return {"NRP-2",
            {{20, 1, 5, 8}, {40, 2, 7, 6}, {80, 3, 9, 4}, {160, 4, 10, 2}, {320, 5, 15, 0}},
            500, 1, 5, 1, 30};
  }
  if (name == "NRP-3") {
    return {"NRP-3", {{250, 1, 5, 8}, {500, 2, 8, 2}, {750, 5, 10, 0}}, 500, 1, 5, 1, 30};
  }
  if (name == "NRP-4") {
    return {"NRP-4",
            {{250, 1, 5, 8}, {500, 2, 7, 6}, {750, 3, 9, 4}, {1000, 4, 10, 2}, {750, 5, 15, 0}},
            750, 1, 5, 1, 30};
  }
  if (name == "NRP-5") {
    return {"NRP-5", {{500, 1, 3, 4}, {500, 2, 2, 4}, {500, 3, 5, 0}}, 1000, 1, 1, 1, 30};
  }
  std::string valid;
  for (const auto& n : builtin_spec_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown instance family '" + std::string(name) +
                              "'; valid names: " + valid);
}

inline void check_spec(const GenSpec& spec) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("generator spec '" + spec.name + "': " + why);
  };
  if (spec.levels.empty()) fail("no levels");
  for (std::size_t l = 0; l < spec.levels.size(); ++l) {
    const auto& level = spec.levels[l];
    const bool last = l + 1 == spec.levels.size();
    const auto where = "level " + std::to_string(l + 1);
    if (level.count == 0) fail(where + " is empty");
    if (level.cost_min < 1 || level.cost_min > level.cost_max) fail(where + " has a bad cost range");
    if (last && level.max_children != 0) fail("the last level cannot have children");
    if (!last && level.max_children == 0) fail(where + " needs a positive child bound");
    if (!last && level.max_children > spec.levels[l + 1].count) {
      fail(where + " allows more children than the next level holds");
    }
  }
  if (spec.customer_count == 0) fail("no customers");
  if (spec.request_min < 1 || spec.request_min > spec.request_max ||
      spec.request_max > spec.requirement_count()) {
    fail("bad request range");
  }
  if (spec.profit_min < 1 || spec.profit_min > spec.profit_max) fail("bad profit range");
}

/// Deterministic in (spec, seed). Costs, dependencies and customers come
/// from three independent streams.
inline ProblemData generate(const GenSpec& spec, std::uint64_t seed) {
  check_spec(spec);
  ProblemData data;

  auto cost_rng = Rng::stream(StreamPurpose::GenerateCosts, seed);
  for (const auto& level : spec.levels) {
    data.level_sizes.push_back(level.count);
    for (std::size_t i = 0; i < level.count; ++i) {
      data.costs.push_back(cost_rng.between(level.cost_min, level.cost_max));
    }
  }

  auto edge_rng = Rng::stream(StreamPurpose::GenerateEdges, seed);
  std::size_t level_start = 0;
  for (std::size_t l = 0; l + 1 < spec.levels.size(); ++l) {
    const auto& level = spec.levels[l];
    const std::size_t next_start = level_start + level.count;
    const std::size_t next_count = spec.levels[l + 1].count;
    for (std::size_t i = 0; i < level.count; ++i) {
      const auto degree =
          static_cast<std::size_t>(edge_rng.between(0, static_cast<std::int64_t>(level.max_children)));
      for (auto child : edge_rng.sample(next_count, degree)) {
        data.dependencies.push_back({static_cast<std::int64_t>(level_start + i + 1),
                                     static_cast<std::int64_t>(next_start + child + 1)});
      }
    }
    level_start = next_start;
  }

  auto customer_rng = Rng::stream(StreamPurpose::GenerateCustomers, seed);
  const std::size_t n = data.costs.size();
  for (std::size_t c = 0; c < spec.customer_count; ++c) {
    CustomerSpec customer;
    const auto k = static_cast<std::size_t>(customer_rng.between(
        static_cast<std::int64_t>(spec.request_min), static_cast<std::int64_t>(spec.request_max)));
    for (auto r : customer_rng.sample(n, k)) customer.requests.push_back(static_cast<std::int64_t>(r) + 1);
    std::sort(customer.requests.begin(), customer.requests.end());
    customer.profit = customer_rng.between(spec.profit_min, spec.profit_max);
    data.customers.push_back(std::move(customer));
  }
  return data;
}

namespace detail {

inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  auto dash = text.find('-', 1);
  try {
    if (dash == std::string::npos) {
      auto v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, dash)), std::stoll(text.substr(dash + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range '" + text + "'");
  }
}

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace detail

/// Reads a custom recipe:
///
///   name = my-family
///   levels = 20:1-5:8 40:2-8:2 80:5-10:0     (count:cost range:max children)
///   customers = 100
///   requests = 1-5
///   profits = 1-30
inline GenSpec parse_gen_spec(std::string_view text) {
  GenSpec spec;
  spec.name = "custom";
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (detail::trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = detail::trim(std::string_view(line).substr(0, eq));
    const auto value = detail::trim(std::string_view(line).substr(eq + 1));
    if (key == "name") {
      spec.name = value;
    } else if (key == "levels") {
      std::istringstream items(value);
      std::string item;
      while (items >> item) {
        auto a = item.find(':');
        auto b = item.find(':', a == std::string::npos ? a : a + 1);
        if (a == std::string::npos || b == std::string::npos) {
          throw std::invalid_argument("line " + std::to_string(line_no) + ": bad level '" + item + "'");
        }
        auto [lo, hi] = detail::parse_range(item.substr(a + 1, b - a - 1));
        spec.levels.push_back({static_cast<std::size_t>(std::stoull(item.substr(0, a))), lo, hi,
                               static_cast<std::size_t>(std::stoull(item.substr(b + 1)))});
      }
    } else if (key == "customers") {
      spec.customer_count = static_cast<std::size_t>(std::stoull(value));
    } else if (key == "requests") {
      auto [lo, hi] = detail::parse_range(value);
      spec.request_min = static_cast<std::size_t>(lo);
      spec.request_max = static_cast<std::size_t>(hi);
    } else if (key == "profits") {
      std::tie(spec.profit_min, spec.profit_max) = detail::parse_range(value);
    } else {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  check_spec(spec);
  return spec;
}

}  // namespace nrp
