#pragma once

// Comparison solvers: GRASP, Lundy-Mees simulated annealing and an exact
// depth-first search for small instances.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrp/instance.hpp"
#include "nrp/local_search.hpp"
#include "nrp/random.hpp"
#include "nrp/solution.hpp"

namespace nrp {

struct GraspParams {
  std::size_t restarts = 100;
  std::size_t rcl_length = 10;

  void check() const {
    if (restarts < 1) throw std::invalid_argument("GRASP needs at least one restart");
    if (rcl_length < 1) throw std::invalid_argument("RCL length must be at least 1");
  }
};

/// Greedy randomised fill. Affordable customers are ranked by
/// profit / max(1, marginal cost) (ties: lower index first) and the next one
/// is drawn uniformly from the top `rcl_length`.
inline Solution grasp_construct(const Instance& instance, std::int64_t budget,
                                std::size_t rcl_length, Rng& rng) {
  if (rcl_length < 1) throw std::invalid_argument("RCL length must be at least 1");
  Solution solution(instance);
  std::vector<std::size_t> candidates;
  for (std::size_t c = 0; c < instance.customer_count(); ++c) {
    if (instance.customer(c).closure_cost <= budget) candidates.push_back(c);
  }

  struct Scored {
    std::size_t customer;
    std::int64_t profit;
    std::int64_t cost;  // max(1, marginal cost)
  };
  std::vector<Scored> scored;
  while (!candidates.empty()) {
    scored.clear();
    std::vector<std::size_t> still_fitting;
    for (auto c : candidates) {
      const auto extra = solution.marginal_cost(c);
      if (solution.cost() + extra > budget) continue;
      still_fitting.push_back(c);
      scored.push_back({c, instance.customer(c).profit, std::max<std::int64_t>(1, extra)});
    }
    candidates = std::move(still_fitting);
    if (scored.empty()) break;

    // Ratios compared exactly by cross-multiplication.
    auto better = [](const Scored& a, const Scored& b) {
      const auto lhs = a.profit * b.cost;
      const auto rhs = b.profit * a.cost;
      return lhs != rhs ? lhs > rhs : a.customer < b.customer;
    };
    const std::size_t rcl = std::min(rcl_length, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(rcl), scored.end(),
                      better);
    const auto chosen = scored[rng.below(rcl)].customer;
    solution.add(chosen);
    std::erase(candidates, chosen);
  }
  return solution;
}

/// Best of `restarts` rounds of grasp_construct followed by improve().
inline Solution grasp(const Instance& instance, std::int64_t budget, const GraspParams& params,
                      std::uint64_t seed) {
  params.check();
  Solution best(instance);
  for (std::size_t i = 0; i < params.restarts; ++i) {
    auto rng = Rng::stream(StreamPurpose::Grasp, seed, i);
    auto local = improve(instance, budget, grasp_construct(instance, budget, params.rcl_length, rng), rng);
    if (local.profit() > best.profit()) best = std::move(local);
  }
  return best;
}

struct SaParams {
  double lm_beta = 1e-8;
  double initial_temp = 0.0;  // <= 0 means calibrate from probe moves
  double final_temp = 1e-4;
  std::size_t moves_per_temp = 1;
  /// Hard cap on move attempts. With lm_beta = 1e-8 the schedule needs about
  /// 1 / (lm_beta * final_temp) = 1e12 moves to cool, so in practice this cap
  /// is what ends the run.
  std::uint64_t max_moves = 1'000'000;

  void check() const {
    if (!(lm_beta > 0.0)) throw std::invalid_argument("lm_beta must be positive");
    if (!(final_temp > 0.0)) throw std::invalid_argument("final temperature must be positive");
    if (initial_temp > 0.0 && !(final_temp < initial_temp)) {
      throw std::invalid_argument("final temperature must be below the initial temperature");
    }
    if (moves_per_temp < 1) throw std::invalid_argument("need at least one move per temperature");
  }
};

/// Lundy-Mees cooling step.
inline double lundy_mees_step(double temperature, double lm_beta) {
  return temperature / (1.0 + lm_beta * temperature);
}

/// Metropolis rule for a profit change `delta` (we maximise): improvements
/// always pass, losses pass with probability exp(delta / temperature).
inline bool accept_move(double delta, double temperature, double u) {
  if (delta >= 0.0) return true;
  if (!(temperature > 0.0)) return false;
  return u < std::exp(delta / temperature);
}

/// Temperature at which a loss of the mean sampled size is accepted with
/// probability 0.9. Losses are sampled from 100 probe flips of `from`; when
/// none of them is a loss (empty start), the profits of the probed customers
/// stand in.
inline double calibrate_temperature(const Solution& from, Rng& rng, std::size_t probes = 100) {
  const Instance& instance = from.instance();
  double losses = 0.0;
  double all = 0.0;
  std::size_t loss_count = 0;
  for (std::size_t i = 0; i < probes; ++i) {
    const auto c = static_cast<std::size_t>(rng.below(instance.customer_count()));
    const auto w = static_cast<double>(instance.customer(c).profit);
    all += w;
    if (from.contains(c)) {
      losses += w;
      ++loss_count;
    }
  }
  const double mean = loss_count ? losses / static_cast<double>(loss_count) : all / static_cast<double>(probes);
  return -mean / std::log(0.9);
}

struct SaResult {
  Solution best;
  std::uint64_t moves = 0;
  double initial_temp = 0.0;
  double final_temp = 0.0;
  std::vector<std::int64_t> best_trace;  // best-so-far profit after each improvement
};

/// Single-flip annealing from a random feasible start. Flips that break the
/// budget are rejected; the best visited solution is returned.
inline SaResult simulated_annealing(const Instance& instance, std::int64_t budget,
                                    const SaParams& params, Rng& rng) {
  params.check();
  Solution current = random_feasible(instance, budget, rng);
  SaResult result{current, 0, 0.0, 0.0, {current.profit()}};
  if (instance.customer_count() == 0) return result;

  double temperature = params.initial_temp > 0.0 ? params.initial_temp : calibrate_temperature(current, rng);
  result.initial_temp = temperature;
  const auto m = static_cast<std::uint64_t>(instance.customer_count());

  while (temperature > params.final_temp && result.moves < params.max_moves) {
    for (std::size_t k = 0; k < params.moves_per_temp && result.moves < params.max_moves; ++k) {
      ++result.moves;
      const auto c = static_cast<std::size_t>(rng.below(m));
      if (current.contains(c)) {
        const auto delta = -static_cast<double>(instance.customer(c).profit);
        if (accept_move(delta, temperature, rng.uniform01())) current.remove(c);
      } else if (current.cost() + current.marginal_cost(c) <= budget) {
        current.add(c);
        if (current.profit() > result.best.profit()) {
          result.best = current;
          result.best_trace.push_back(current.profit());
        }
      }
    }
    temperature = lundy_mees_step(temperature, params.lm_beta);
  }
  result.final_temp = temperature;
  return result;
}

inline SaResult simulated_annealing(const Instance& instance, std::int64_t budget,
                                    const SaParams& params, std::uint64_t seed) {
  auto rng = Rng::stream(StreamPurpose::Annealing, seed);
  return simulated_annealing(instance, budget, params, rng);
}

class SolverGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kExactCustomerLimit = 25;

/// Maximum-profit feasible subset by depth-first search over customers in
/// index order, pruned by budget and by remaining profit. Among optimal
/// subsets the lexicographically smallest index sequence is returned.
inline Solution exact(const Instance& instance, std::int64_t budget) {
  const std::size_t m = instance.customer_count();
  if (m > kExactCustomerLimit) {
    throw SolverGuard("exact search is limited to " + std::to_string(kExactCustomerLimit) +
                      " customers, instance has " + std::to_string(m));
  }
  std::vector<std::int64_t> suffix(m + 1, 0);
  for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] + instance.customer(i).profit;

  Solution current(instance);
  Solution best(instance);
  std::vector<std::size_t> best_ids;

  auto search = [&](auto&& self, std::size_t i) -> void {
    if (current.profit() + suffix[i] < best.profit()) return;
    if (i == m) {
      if (current.profit() > best.profit()) {
        best = current;
        best_ids = current.selected();
      } else if (current.profit() == best.profit()) {
        auto ids = current.selected();
        if (ids < best_ids) {
          best = current;
          best_ids = std::move(ids);
        }
      }
      return;
    }
    if (current.cost() + current.marginal_cost(i) <= budget) {
      current.add(i);
      self(self, i + 1);
      current.remove(i);
    }
    self(self, i + 1);
  };
  search(search, 0);
  return best;
}

}  // namespace nrp
