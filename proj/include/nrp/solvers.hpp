#pragma once

// Uniform entry point over all solvers plus the solution dump format used by
// `nrp solve --dump` and `nrp verify`.

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nrp/aco.hpp"
#include "nrp/baselines.hpp"
#include "nrp/instance.hpp"
#include "nrp/local_search.hpp"
#include "nrp/solution.hpp"

namespace nrp {

enum class Algorithm { Haco, Aco, Fhc, Grasp, Sa, Exact };

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"haco", "aco", "fhc", "grasp", "sa", "exact"};
  return names;
}

inline std::string_view to_string(Algorithm algorithm) {
  return algorithm_names()[static_cast<std::size_t>(algorithm)];
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  const auto& names = algorithm_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Algorithm>(i);
  }
  return std::nullopt;
}

struct SolverConfig {
  Algorithm algorithm = Algorithm::Haco;
  std::string label;  // defaults to the algorithm name
  AcoParams aco;
  FhcParams fhc;
  GraspParams grasp;
  SaParams sa;

  std::string name() const { return label.empty() ? std::string(to_string(algorithm)) : label; }
};

struct SolveOutcome {
  Solution solution;
  double seconds = 0.0;
  std::uint64_t work = 0;  // iterations, restarts or SA moves
};

/// Runs one solver; the clock covers the solver call only.
inline SolveOutcome solve(const Instance& instance, std::int64_t budget, const SolverConfig& config,
                          std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto finish = [&](Solution s, std::uint64_t work) {
    const std::chrono::duration<double> elapsed = Clock::now() - start;
    return SolveOutcome{std::move(s), elapsed.count(), work};
  };
  switch (config.algorithm) {
    case Algorithm::Haco:
    case Algorithm::Aco: {
      auto params = config.aco;
      params.use_local_search = config.algorithm == Algorithm::Haco;
      auto result = run_aco(instance, budget, params, seed);
      return finish(std::move(result.best), params.iterations);
    }
    case Algorithm::Fhc: {
      auto best = fhc(instance, budget, config.fhc, seed);
      return finish(std::move(best), config.fhc.restarts);
    }
    case Algorithm::Grasp: {
      auto best = grasp(instance, budget, config.grasp, seed);
      return finish(std::move(best), config.grasp.restarts);
    }
    case Algorithm::Sa: {
      auto result = simulated_annealing(instance, budget, config.sa, seed);
      return finish(std::move(result.best), result.moves);
    }
    case Algorithm::Exact: {
      auto best = exact(instance, budget);
      return finish(std::move(best), 0);
    }
  }
  throw std::logic_error("unknown algorithm");
}

// Dump format, 1-based ids:
//
//   budget <B>
//   profit <P>
//   cost <C>
//   customers <id> ...
//   requirements <id> ...

struct SolutionDump {
  std::int64_t budget = 0;
  std::int64_t profit = 0;
  std::int64_t cost = 0;
  std::vector<std::int64_t> customers;
  std::vector<std::int64_t> requirements;
};

inline std::string write_dump(const Solution& solution, std::int64_t budget) {
  std::ostringstream out;
  out << "budget " << budget << "\nprofit " << solution.profit() << "\ncost " << solution.cost()
      << "\ncustomers";
  for (auto c : solution.selected()) out << ' ' << c + 1;
  out << "\nrequirements";
  const auto covered = solution.covered();
  for (auto r = covered.find_first(); r != RequirementSet::npos; r = covered.find_next(r)) {
    out << ' ' << r + 1;
  }
  out << '\n';
  return out.str();
}

inline SolutionDump read_dump(std::string_view text) {
  SolutionDump dump;
  std::istringstream in{std::string(text)};
  std::string line;
  bool seen[5] = {};
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key) || key.front() == '#') continue;
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("dump line " + std::to_string(line_no) + ": " + why);
    };
    auto scalar = [&](std::int64_t& target, int slot) {
      if (!(fields >> target)) fail("missing value for " + key);
      seen[slot] = true;
    };
    auto list = [&](std::vector<std::int64_t>& target, int slot) {
      std::int64_t id = 0;
      while (fields >> id) target.push_back(id);
      if (!fields.eof()) fail("non-integer id in " + key);
      seen[slot] = true;
    };
    if (key == "budget") scalar(dump.budget, 0);
    else if (key == "profit") scalar(dump.profit, 1);
    else if (key == "cost") scalar(dump.cost, 2);
    else if (key == "customers") list(dump.customers, 3);
    else if (key == "requirements") list(dump.requirements, 4);
    else fail("unknown key '" + key + "'");
  }
  for (bool s : seen) {
    if (!s) throw std::runtime_error("dump is missing a field");
  }
  return dump;
}

/// Re-evaluates a dump from scratch. Returns an empty string when it checks
/// out, otherwise a description of the first mismatch.
inline std::string verify_dump(const Instance& instance, const SolutionDump& dump) {
  std::vector<std::size_t> ids;
  for (auto id : dump.customers) {
    if (id < 1 || static_cast<std::size_t>(id) > instance.customer_count()) {
      return "unknown customer id " + std::to_string(id);
    }
    ids.push_back(static_cast<std::size_t>(id - 1));
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) return "duplicate customer id";
  const auto solution = evaluate(instance, ids);
  if (solution.profit() != dump.profit) {
    return "profit " + std::to_string(dump.profit) + " recorded, " + std::to_string(solution.profit()) +
           " recomputed";
  }
  if (solution.cost() != dump.cost) {
    return "cost " + std::to_string(dump.cost) + " recorded, " + std::to_string(solution.cost()) +
           " recomputed";
  }
  std::vector<std::int64_t> covered;
  const auto bits = solution.covered();
  for (auto r = bits.find_first(); r != RequirementSet::npos; r = bits.find_next(r)) {
    covered.push_back(static_cast<std::int64_t>(r) + 1);
  }
  auto listed = dump.requirements;
  std::sort(listed.begin(), listed.end());
  if (listed != covered) return "requirement list does not match the union of customer closures";
  if (solution.cost() > dump.budget) {
    return "cost " + std::to_string(solution.cost()) + " exceeds budget " + std::to_string(dump.budget);
  }
  return {};
}

}  // namespace nrp
