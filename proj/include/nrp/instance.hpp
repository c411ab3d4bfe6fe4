#pragma once

// NRP data model: requirements with integer costs, a prerequisite DAG and
// customers who each need a set of requirements plus everything those
// requirements transitively depend on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace nrp {

using RequirementSet = boost::dynamic_bitset<std::uint64_t>;

/// Prerequisite edge with 1-based requirement ids: `before` must be developed
/// before `after`.
struct Dependency {
  std::int64_t before = 0;
  std::int64_t after = 0;
  friend bool operator==(const Dependency&, const Dependency&) = default;
};

struct CustomerSpec {
  std::int64_t profit = 0;
  std::vector<std::int64_t> requests;  // 1-based requirement ids
  friend bool operator==(const CustomerSpec&, const CustomerSpec&) = default;
};

/// Raw problem description, as read from disk or produced by the generator.
/// Requirement ids are 1-based and assigned level by level.
struct ProblemData {
  std::vector<std::size_t> level_sizes;
  std::vector<std::int64_t> costs;
  std::vector<Dependency> dependencies;
  std::vector<CustomerSpec> customers;
  friend bool operator==(const ProblemData&, const ProblemData&) = default;
};

enum class IssueKind { CyclicDependency, BadId, NonPositiveValue };

struct ValidationIssue {
  IssueKind kind;
  std::string message;
  std::vector<std::int64_t> cycle;  // 1-based ids, set for CyclicDependency
};

inline const char* to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::CyclicDependency: return "CyclicDependency";
    case IssueKind::BadId: return "BadId";
    case IssueKind::NonPositiveValue: return "NonPositiveValue";
  }
  return "?";
}

namespace detail {

// Finds one directed cycle, returned as a list of 0-based nodes where each
// node precedes the next and the last precedes the first.
inline std::vector<std::size_t> find_cycle(std::size_t n,
                                           const std::vector<std::vector<std::size_t>>& out) {
  enum : char { White, Grey, Black };
  std::vector<char> colour(n, White);
  std::vector<std::size_t> parent(n, n);
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (node, next edge)
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != White) continue;
    stack.push_back({root, 0});
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [node, edge] = stack.back();
      if (edge == out[node].size()) {
        colour[node] = Black;
        stack.pop_back();
        continue;
      }
      const std::size_t next = out[node][edge++];
      if (colour[next] == Grey) {
        std::vector<std::size_t> cycle{node};
        for (std::size_t v = node; v != next;) {
          v = parent[v];
          cycle.push_back(v);
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (colour[next] == White) {
        parent[next] = node;
        colour[next] = Grey;
        stack.push_back({next, 0});
      }
    }
  }
  return {};
}

}  // namespace detail

/// Checks everything an Instance relies on. An empty result means valid.
inline std::vector<ValidationIssue> validate(const ProblemData& data) {
  std::vector<ValidationIssue> issues;
  const auto n = static_cast<std::int64_t>(data.costs.size());
  auto bad_id = [&](std::int64_t id) { return id < 1 || id > n; };

  const std::size_t level_total =
      std::accumulate(data.level_sizes.begin(), data.level_sizes.end(), std::size_t{0});
  if (!data.level_sizes.empty() && level_total != data.costs.size()) {
    issues.push_back({IssueKind::BadId,
                      "level sizes sum to " + std::to_string(level_total) + " but there are " +
                          std::to_string(n) + " requirements",
                      {}});
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (data.costs[i] < 1) {
      issues.push_back({IssueKind::NonPositiveValue,
                        "requirement " + std::to_string(i + 1) + " has cost " +
                            std::to_string(data.costs[i]),
                        {}});
    }
  }

  bool edges_ok = true;
  for (const auto& dep : data.dependencies) {
    if (bad_id(dep.before) || bad_id(dep.after)) {
      edges_ok = false;
      issues.push_back({IssueKind::BadId,
                        "dependency (" + std::to_string(dep.before) + ", " +
                            std::to_string(dep.after) + ") references an unknown requirement",
                        {}});
    }
  }

  for (std::size_t c = 0; c < data.customers.size(); ++c) {
    const auto& customer = data.customers[c];
    const std::string who = "customer " + std::to_string(c + 1);
    if (customer.profit < 1) {
      issues.push_back(
          {IssueKind::NonPositiveValue, who + " has profit " + std::to_string(customer.profit), {}});
    }
    if (customer.requests.empty()) {
      issues.push_back({IssueKind::NonPositiveValue, who + " requests no requirements", {}});
    }
    for (auto id : customer.requests) {
      if (bad_id(id)) {
        issues.push_back(
            {IssueKind::BadId, who + " requests unknown requirement " + std::to_string(id), {}});
      }
    }
  }

  if (edges_ok) {
    std::vector<std::vector<std::size_t>> out(data.costs.size());
    for (const auto& dep : data.dependencies) {
      out[dep.before - 1].push_back(static_cast<std::size_t>(dep.after - 1));
    }
    auto cycle = detail::find_cycle(data.costs.size(), out);
    if (!cycle.empty()) {
      ValidationIssue issue{IssueKind::CyclicDependency, "dependency cycle:", {}};
      for (auto v : cycle) {
        issue.cycle.push_back(static_cast<std::int64_t>(v) + 1);
        issue.message += " " + std::to_string(v + 1);
      }
      issues.push_back(std::move(issue));
    }
  }
  return issues;
}

class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(std::vector<ValidationIssue> issues)
      : std::runtime_error(describe(issues)), issues_(std::move(issues)) {}

  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  static std::string describe(const std::vector<ValidationIssue>& issues) {
    std::string text = "invalid instance";
    for (const auto& issue : issues) {
      text += "\n  ";
      text += to_string(issue.kind);
      text += ": ";
      text += issue.message;
    }
    return text;
  }

  std::vector<ValidationIssue> issues_;
};

/// Customer with derived closure data. Indices are 0-based.
struct Customer {
  std::int64_t profit = 0;
  std::vector<std::size_t> requests;  // sorted
  std::vector<std::size_t> closure;   // sorted, prerequisite-closed
  RequirementSet closure_bits;
  std::int64_t closure_cost = 0;
};

/// Validated, immutable NRP instance. Public accessors use 0-based indices;
/// the 1-based ids of the text format only appear in ProblemData.
class Instance {
 public:
  explicit Instance(ProblemData data) : data_(std::move(data)) {
    if (auto issues = validate(data_); !issues.empty()) throw InvalidInstance(std::move(issues));
    if (data_.level_sizes.empty() && !data_.costs.empty()) {
      data_.level_sizes = {data_.costs.size()};
    }
    build();
  }

  const ProblemData& data() const noexcept { return data_; }
  std::size_t requirement_count() const noexcept { return data_.costs.size(); }
  std::size_t customer_count() const noexcept { return customers_.size(); }
  std::int64_t requirement_cost(std::size_t r) const { return data_.costs[r]; }
  const Customer& customer(std::size_t c) const { return customers_[c]; }
  const std::vector<Customer>& customers() const noexcept { return customers_; }
  std::int64_t total_cost() const noexcept { return total_cost_; }
  std::int64_t total_profit() const noexcept { return total_profit_; }
  std::int64_t max_profit() const noexcept { return max_profit_; }

  /// All transitive prerequisites of requirement r, excluding r itself.
  const RequirementSet& prerequisites(std::size_t r) const { return ancestors_[r]; }

  /// Requirements customer c needs developed: its requests plus every
  /// transitive prerequisite.
  const std::vector<std::size_t>& closure(std::size_t c) const { return customers_[c].closure; }

 private:
  void build() {
    const std::size_t n = data_.costs.size();
    total_cost_ = std::accumulate(data_.costs.begin(), data_.costs.end(), std::int64_t{0});

    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& dep : data_.dependencies) {
      out[dep.before - 1].push_back(static_cast<std::size_t>(dep.after - 1));
      ++indegree[dep.after - 1];
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (indegree[r] == 0) order.push_back(r);
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (auto next : out[order[head]]) {
        if (--indegree[next] == 0) order.push_back(next);
      }
    }

    ancestors_.assign(n, RequirementSet(n));
    for (auto r : order) {
      for (auto next : out[r]) {
        ancestors_[next] |= ancestors_[r];
        ancestors_[next].set(r);
      }
    }

    customers_.reserve(data_.customers.size());
    for (const auto& spec : data_.customers) {
      Customer customer;
      customer.profit = spec.profit;
      customer.closure_bits.resize(n);
      for (auto id : spec.requests) {
        const auto r = static_cast<std::size_t>(id - 1);
        customer.requests.push_back(r);
        customer.closure_bits |= ancestors_[r];
        customer.closure_bits.set(r);
      }
      std::sort(customer.requests.begin(), customer.requests.end());
      customer.requests.erase(std::unique(customer.requests.begin(), customer.requests.end()),
                              customer.requests.end());
      for (auto r = customer.closure_bits.find_first(); r != RequirementSet::npos;
           r = customer.closure_bits.find_next(r)) {
        customer.closure.push_back(r);
        customer.closure_cost += data_.costs[r];
      }
      total_profit_ += customer.profit;
      max_profit_ = std::max(max_profit_, customer.profit);
      customers_.push_back(std::move(customer));
    }
  }

  ProblemData data_;
  std::vector<RequirementSet> ancestors_;
  std::vector<Customer> customers_;
  std::int64_t total_cost_ = 0;
  std::int64_t total_profit_ = 0;
  std::int64_t max_profit_ = 0;
};

/// Budget bound B = floor(ratio * total cost). A 1e-9 slack absorbs binary
/// rounding of decimal ratios such as 0.7 so that exact products stay exact.
inline std::int64_t budget(const Instance& instance, double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw std::invalid_argument("budget ratio must lie in (0, 1], got " + std::to_string(ratio));
  }
  return static_cast<std::int64_t>(
      std::floor(ratio * static_cast<double>(instance.total_cost()) + 1e-9));
}

}  // namespace nrp
