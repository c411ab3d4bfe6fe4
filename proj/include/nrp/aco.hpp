#pragma once

// Ant colony optimisation for NRP with optional local search (HACO when on,
// plain ACO when off).
//
// Pheromone lives on customers. An ant builds a subset by repeatedly drawing
// an affordable customer with probability proportional to
// tau_i^alpha * eta_i^beta, where eta_i = profit_i / closure_cost_i. After all
// ants of an iteration finish, every trail evaporates by (1 - rho) and each
// ant adds gamma * profit(S_k) to the customers it selected.
//
// eta is static by default. HeuristicMode::Marginal is an opt-in variant in
// which an ant re-prices eta_i as profit_i / max(1, marginal cost of i) while
// it builds, so requirements it already paid for make the customers sharing
// them more attractive. On an empty solution both modes agree.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nrp/instance.hpp"
#include "nrp/local_search.hpp"
#include "nrp/random.hpp"
#include "nrp/solution.hpp"

namespace nrp {

enum class HeuristicMode { Static, Marginal };

inline std::optional<HeuristicMode> parse_heuristic(std::string_view name) {
  if (name == "static") return HeuristicMode::Static;
  if (name == "marginal") return HeuristicMode::Marginal;
  return std::nullopt;
}

struct AcoParams {
  double alpha = 1.1;
  double beta = 1.5;
  double gamma = 0.020;
  double rho = 0.13;
  std::size_t ants = 10;
  std::size_t iterations = 10;
  bool use_local_search = true;
  HeuristicMode heuristic = HeuristicMode::Static;

  void check() const {
    if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw std::invalid_argument("alpha and beta must be >= 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (ants < 1) throw std::invalid_argument("need at least one ant");
  }
};

struct PheromoneState {
  std::vector<double> tau;
  double theta = 0.0;
};

/// tau_i = theta * w_i with theta = 1 / max w, so initial trails lie in (0, 1].
inline PheromoneState init_pheromone(const Instance& instance) {
  if (instance.customer_count() == 0) throw std::invalid_argument("instance has no customers");
  PheromoneState state;
  state.theta = 1.0 / static_cast<double>(instance.max_profit());
  state.tau.reserve(instance.customer_count());
  for (const auto& customer : instance.customers()) {
    state.tau.push_back(state.theta * static_cast<double>(customer.profit));
  }
  return state;
}

inline std::vector<double> heuristic_info(const Instance& instance) {
  std::vector<double> eta;
  eta.reserve(instance.customer_count());
  for (std::size_t c = 0; c < instance.customer_count(); ++c) {
    const auto& customer = instance.customer(c);
    if (customer.closure_cost <= 0) {
      throw std::domain_error("customer " + std::to_string(c + 1) + " has zero closure cost");
    }
    eta.push_back(static_cast<double>(customer.profit) / static_cast<double>(customer.closure_cost));
  }
  return eta;
}

/// Unnormalised selection weights tau_i^alpha * eta_i^beta for all customers.
inline std::vector<double> desirability(std::span<const double> tau, std::span<const double> eta,
                                        double alpha, double beta) {
  std::vector<double> weights(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    weights[i] = std::pow(tau[i], alpha) * std::pow(eta[i], beta);
  }
  return weights;
}

namespace detail {

// Probabilities over `candidates` (aligned with it). All-zero weights, which
// only happen once rho = 1 has wiped the trails, fall back to uniform.
inline void normalise(std::span<const double> weights, std::span<const std::size_t> candidates,
                      std::vector<double>& out) {
  out.resize(candidates.size());
  double total = 0.0;
  for (auto c : candidates) total += weights[c];
  if (!(total > 0.0) || !std::isfinite(total)) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(candidates.size()));
    return;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = weights[candidates[i]] / total;
}

}  // namespace detail

/// Random proportional rule restricted to `candidates`; result[i] belongs to
/// candidates[i].
inline std::vector<double> selection_probabilities(const PheromoneState& state,
                                                   std::span<const double> eta,
                                                   std::span<const std::size_t> candidates,
                                                   double alpha, double beta) {
  if (candidates.empty()) throw std::invalid_argument("empty candidate set");
  std::vector<double> weights(state.tau.size(), 0.0);
  for (auto c : candidates) weights[c] = std::pow(state.tau[c], alpha) * std::pow(eta[c], beta);
  std::vector<double> probabilities;
  detail::normalise(weights, candidates, probabilities);
  return probabilities;
}

/// Position of the first entry with positive probability whose cumulative
/// sum reaches r. If rounding leaves r above the final sum, the last
/// positive entry wins.
inline std::size_t roulette_select(std::span<const double> probabilities, double r) {
  double cumulative = 0.0;
  std::size_t last_positive = probabilities.size();
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (!(probabilities[i] > 0.0)) continue;
    cumulative += probabilities[i];
    last_positive = i;
    if (cumulative >= r) return i;
  }
  if (last_positive == probabilities.size()) throw std::invalid_argument("no positive probability");
  return last_positive;
}

/// Per-iteration snapshot of the selection weights: tau^alpha is fixed for
/// the whole iteration, eta^beta may be re-priced per ant.
struct ColonyWeights {
  std::vector<double> pheromone;  // tau_i^alpha
  std::vector<double> heuristic;  // eta_i^beta with the static eta
  double beta = 0.0;
  HeuristicMode mode = HeuristicMode::Static;
};

inline ColonyWeights colony_weights(const PheromoneState& state, std::span<const double> eta,
                                    const AcoParams& params) {
  ColonyWeights w;
  w.beta = params.beta;
  w.mode = params.heuristic;
  w.pheromone.reserve(state.tau.size());
  w.heuristic.reserve(state.tau.size());
  for (std::size_t i = 0; i < state.tau.size(); ++i) {
    w.pheromone.push_back(std::pow(state.tau[i], params.alpha));
    w.heuristic.push_back(std::pow(eta[i], params.beta));
  }
  return w;
}

/// One ant: keeps drawing among the customers that still fit the budget
/// until none does.
inline Solution construct_solution(const Instance& instance, std::int64_t budget,
                                   const ColonyWeights& colony, Rng& rng) {
  const std::size_t m = instance.customer_count();
  Solution solution(instance);
  std::vector<std::size_t> candidates;
  std::vector<double> weights(m, 0.0);
  std::vector<std::int64_t> priced_at(m, 0);  // marginal cost the weight was computed for
  for (std::size_t c = 0; c < m; ++c) {
    const auto& customer = instance.customer(c);
    if (customer.closure_cost > budget) continue;
    candidates.push_back(c);
    weights[c] = colony.pheromone[c] * colony.heuristic[c];
    priced_at[c] = customer.closure_cost;
  }
  std::vector<double> probabilities;
  while (!candidates.empty()) {
    detail::normalise(weights, candidates, probabilities);
    const auto pick = roulette_select(probabilities, rng.uniform01());
    solution.add(candidates[pick]);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
    // Union cost only grows, so a customer that stops fitting never fits again.
    std::erase_if(candidates, [&](std::size_t c) {
      const auto extra = solution.marginal_cost(c);
      if (solution.cost() + extra > budget) return true;
      if (colony.mode == HeuristicMode::Marginal && extra != priced_at[c]) {
        priced_at[c] = extra;
        const double eta = static_cast<double>(instance.customer(c).profit) /
                           static_cast<double>(std::max<std::int64_t>(1, extra));
        weights[c] = colony.pheromone[c] * std::pow(eta, colony.beta);
      }
      return false;
    });
  }
  return solution;
}

inline Solution construct_solution(const Instance& instance, std::int64_t budget,
                                   const PheromoneState& state, std::span<const double> eta,
                                   const AcoParams& params, Rng& rng) {
  return construct_solution(instance, budget, colony_weights(state, eta, params), rng);
}

inline void evaporate(PheromoneState& state, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
  for (auto& tau : state.tau) tau *= 1.0 - rho;
}

inline void deposit(PheromoneState& state, std::span<const Solution> solutions, double gamma) {
  for (const auto& solution : solutions) {
    const double amount = gamma * static_cast<double>(solution.profit());
    for (auto c : solution.selected()) state.tau[c] += amount;
  }
}

struct TracePoint {
  std::size_t iteration = 0;
  std::int64_t best_profit = 0;
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct ColonyResult {
  Solution best;
  std::vector<TracePoint> trace;
  PheromoneState pheromone;
};

/// Runs the colony with `local_search(instance, budget, Solution, Rng&)` as
/// the improvement operator applied to every ant. Ant k of iteration i draws
/// from its own stream keyed by (seed, i, k), so results do not depend on
/// the order ants are evaluated in.
template <typename LocalSearch>
ColonyResult run_colony(const Instance& instance, std::int64_t budget, const AcoParams& params,
                        std::uint64_t seed, LocalSearch&& local_search) {
  params.check();
  ColonyResult result{Solution(instance), {}, init_pheromone(instance)};
  const auto eta = heuristic_info(instance);
  std::vector<Solution> ants;
  ants.reserve(params.ants);

  for (std::size_t iteration = 0; iteration < params.iterations; ++iteration) {
    const auto weights = colony_weights(result.pheromone, eta, params);
    ants.clear();
    for (std::size_t k = 0; k < params.ants; ++k) {
      auto rng = Rng::stream(StreamPurpose::AntColony, seed, iteration, k);
      ants.push_back(local_search(instance, budget, construct_solution(instance, budget, weights, rng), rng));
    }
    evaporate(result.pheromone, params.rho);
    deposit(result.pheromone, ants, params.gamma);
    for (auto& ant : ants) {
      if (ant.profit() > result.best.profit()) result.best = ant;
    }
    result.trace.push_back({iteration + 1, result.best.profit()});
  }
  return result;
}

/// HACO when params.use_local_search is set (hill climbing from each ant's
/// solution), plain ACO otherwise.
inline ColonyResult run_aco(const Instance& instance, std::int64_t budget, const AcoParams& params,
                            std::uint64_t seed) {
  if (params.use_local_search) {
    return run_colony(instance, budget, params, seed,
                      [](const Instance& inst, std::int64_t b, Solution s, Rng& rng) {
                        return improve(inst, b, std::move(s), rng);
                      });
  }
  return run_colony(instance, budget, params, seed,
                    [](const Instance&, std::int64_t, Solution s, Rng&) { return s; });
}

}  // namespace nrp
