#pragma once

// First-found hill climbing over customer subsets.
//
// Neighbourhood of a feasible S: add one unselected customer j, or, when the
// add overflows the budget, swap j in for one selected customer l. Feasible
// means cost(S) <= B.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrp/instance.hpp"
#include "nrp/random.hpp"
#include "nrp/solution.hpp"

namespace nrp {

struct FhcParams {
  std::size_t restarts = 100;

  void check() const {
    if (restarts < 1) throw std::invalid_argument("FHC needs at least one restart");
  }
};

class InfeasibleStart : public std::invalid_argument {
 public:
  InfeasibleStart(std::int64_t cost, std::int64_t budget)
      : std::invalid_argument("start solution costs " + std::to_string(cost) +
                              " which exceeds the budget " + std::to_string(budget)) {}
};

using MoveObserver = std::function<void(const Solution&)>;

/// Greedy fill in a uniformly random customer order.
inline Solution random_feasible(const Instance& instance, std::int64_t budget, Rng& rng) {
  std::vector<std::size_t> order(instance.customer_count());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  rng.shuffle(order);
  Solution solution(instance);
  for (auto c : order) {
    if (solution.cost() + solution.marginal_cost(c) <= budget) solution.add(c);
  }
  return solution;
}

/// Climbs from `start` until a full pass over the unselected customers finds
/// neither a feasible add nor a feasible profit-improving swap.
///
/// Each pass visits the unselected customers in a fresh random order and
/// stops at the first accepted move. For a customer j that does not fit, the
/// swap partner is the selected l of lowest profit (then lowest index) with
/// profit(l) < profit(j) whose swap stays within the budget; that is the
/// best improving swap for j.
inline Solution improve(const Instance& instance, std::int64_t budget, Solution start, Rng& rng,
                        const MoveObserver& on_move = {}) {
  if (start.cost() > budget) throw InfeasibleStart(start.cost(), budget);
  Solution current = std::move(start);
  const auto& customers = instance.customers();

  std::vector<std::size_t> outside;
  std::vector<std::size_t> inside;
  for (;;) {
    outside.clear();
    inside.clear();
    for (std::size_t c = 0; c < instance.customer_count(); ++c) {
      (current.contains(c) ? inside : outside).push_back(c);
    }
    rng.shuffle(outside);
    std::sort(inside.begin(), inside.end(), [&](std::size_t a, std::size_t b) {
      return customers[a].profit != customers[b].profit ? customers[a].profit < customers[b].profit
                                                        : a < b;
    });

    bool moved = false;
    for (auto j : outside) {
      if (current.cost() + current.marginal_cost(j) <= budget) {
        current.add(j);
        moved = true;
        break;
      }
      for (auto l : inside) {
        if (customers[l].profit >= customers[j].profit) break;
        if (current.swap_cost(j, l) <= budget) {
          current.remove(l);
          current.add(j);
          moved = true;
          break;
        }
      }
      if (moved) break;
    }
    if (!moved) return current;
    if (on_move) on_move(current);
  }
}

/// Best of `restarts` independent random_feasible + improve runs. Restart i
/// draws from its own stream, so the result for a prefix of restarts does
/// not depend on how many follow.
inline Solution fhc(const Instance& instance, std::int64_t budget, const FhcParams& params,
                    std::uint64_t seed) {
  params.check();
  Solution best(instance);
  for (std::size_t i = 0; i < params.restarts; ++i) {
    auto rng = Rng::stream(StreamPurpose::HillClimbing, seed, i);
    auto local = improve(instance, budget, random_feasible(instance, budget, rng), rng);
    if (local.profit() > best.profit()) best = std::move(local);
  }
  return best;
}

}  // namespace nrp
