// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion (with a few
// indented detail lines) and exits non-zero if any criterion fails.
//
// Instances and answers that the criteria compare against come from
// support/oracle.hpp, which does not use the library's closure or search code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "nrp/nrp.hpp"
#include "support/oracle.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

const std::vector<double> kRatios{0.3, 0.5, 0.7};

std::string fmt(double value, int precision = 1) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(precision);
  out << value;
  return out.str();
}

nrp::SolverConfig solver(nrp::Algorithm algorithm) {
  nrp::SolverConfig config;
  config.algorithm = algorithm;
  return config;
}

// One random small instance per index, shared by several criteria.
struct SmallCase {
  nrp::ProblemData data;
  std::int64_t budget = 0;
};

std::vector<SmallCase> small_cases(std::uint64_t stream, std::size_t count) {
  auto rng = nrp::Rng::stream(nrp::StreamPurpose::TestData, stream);
  std::vector<SmallCase> cases;
  for (std::size_t i = 0; i < count; ++i) {
    SmallCase c;
    c.data = oracle::random_small(rng, 20, 12);
    const double ratio = kRatios[i % kRatios.size()];
    c.budget = static_cast<std::int64_t>(std::floor(ratio * static_cast<double>(oracle::total_cost(c.data)) + 1e-9));
    cases.push_back(std::move(c));
  }
  return cases;
}

// 1. Every solver returns cost <= B with a closure-consistent union.
Verdict feasibility() {
  const std::vector<nrp::Algorithm> algorithms{nrp::Algorithm::Haco, nrp::Algorithm::Aco, nrp::Algorithm::Fhc,
                                               nrp::Algorithm::Grasp, nrp::Algorithm::Sa, nrp::Algorithm::Exact};
  auto rng = nrp::Rng::stream(nrp::StreamPurpose::TestData, 101);
  std::size_t runs = 0, violations = 0;
  std::string first;
  for (int i = 0; i < 60; ++i) {
    const auto data = oracle::random_small(rng, 20, 12);
    const nrp::Instance instance(data);
    for (double ratio : kRatios) {
      const auto budget = nrp::budget(instance, ratio);
      for (auto algorithm : algorithms) {
        const auto outcome = nrp::solve(instance, budget, solver(algorithm), static_cast<std::uint64_t>(i) + 1);
        ++runs;
        const auto& s = outcome.solution;
        const auto check = oracle::evaluate(data, s.selected());
        const bool ok = s.cost() <= budget && nrp::is_consistent(s) && check.cost == s.cost() &&
                        check.profit == s.profit();
        if (!ok && violations++ == 0) {
          first = std::string(nrp::to_string(algorithm)) + " on instance " + std::to_string(i);
        }
      }
    }
  }
  Verdict v;
  v.pass = runs >= 1000 && violations == 0;
  v.summary = std::to_string(runs) + " solver runs, " + std::to_string(violations) + " violations";
  if (!first.empty()) v.details.push_back("first violation: " + first);
  return v;
}

// 2. HACO (t=50, h=10) against the brute-force optimum.
Verdict oracle_equivalence(const std::vector<SmallCase>& cases) {
  const auto start = Clock::now();
  nrp::AcoParams params;
  params.iterations = 50;
  params.ants = 10;
  std::size_t matched = 0, within = 0;
  double worst = 1.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const nrp::Instance instance(cases[i].data);
    const auto truth = oracle::brute_force(cases[i].data, cases[i].budget);
    const auto found = nrp::run_aco(instance, cases[i].budget, params, i + 1).best.profit();
    if (found == truth.profit) ++matched;
    const double share = truth.profit == 0 ? 1.0 : static_cast<double>(found) / static_cast<double>(truth.profit);
    if (share >= 0.95) ++within;
    worst = std::min(worst, share);
  }
  const double elapsed = seconds_since(start);
  const auto n = static_cast<double>(cases.size());
  Verdict v;
  v.pass = matched >= 0.9 * n && within == cases.size() && elapsed < 120.0;
  v.summary = std::to_string(matched) + "/" + std::to_string(cases.size()) + " optimal, " + std::to_string(within) +
              "/" + std::to_string(cases.size()) + " within 95% (worst " + fmt(100 * worst) + "%), " +
              fmt(elapsed, 2) + " s";
  return v;
}

// 3. FHC output admits no feasible add and no profit-improving 1-swap.
Verdict fhc_certificate(const std::vector<SmallCase>& cases) {
  std::size_t certified = 0;
  std::string first;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const nrp::Instance instance(cases[i].data);
    const auto s = nrp::fhc(instance, cases[i].budget, {}, i + 1);
    const auto move = oracle::improving_move(cases[i].data, cases[i].budget, s.selected());
    const bool feasible = oracle::evaluate(cases[i].data, s.selected()).cost <= cases[i].budget;
    if (move.empty() && feasible) {
      ++certified;
    } else if (first.empty()) {
      first = "instance " + std::to_string(i) + ": " + (feasible ? move : "infeasible");
    }
  }
  Verdict v;
  v.pass = certified == cases.size();
  v.summary = std::to_string(certified) + "/" + std::to_string(cases.size()) + " local optima certified";
  if (!first.empty()) v.details.push_back(first);
  return v;
}

// 4. Selection probabilities sum to 1.
Verdict normalisation() {
  auto rng = nrp::Rng::stream(nrp::StreamPurpose::TestData, 104);
  double worst = 0.0;
  constexpr int kDraws = 10000;
  for (int draw = 0; draw < kDraws; ++draw) {
    const auto m = static_cast<std::size_t>(rng.between(1, 200));
    nrp::PheromoneState state;
    std::vector<double> eta;
    for (std::size_t i = 0; i < m; ++i) {
      state.tau.push_back(std::pow(10.0, -4 + 5 * rng.uniform01()));
      eta.push_back(std::pow(10.0, -3 + 5 * rng.uniform01()));
    }
    const auto k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(m)));
    const auto candidates = rng.sample(m, k);
    const double alpha = 4.0 * rng.uniform01();
    const double beta = 6.0 * rng.uniform01();
    const auto p = nrp::selection_probabilities(state, eta, candidates, alpha, beta);
    worst = std::max(worst, std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
  }
  Verdict v;
  v.pass = worst <= 1e-9;
  std::ostringstream s;
  s << kDraws << " draws, max |sum - 1| = " << worst;
  v.summary = s.str();
  return v;
}

// 5. tau stays in (0, theta*w + h*gamma*W/rho] after full NRP-1 runs.
Verdict pheromone_bound() {
  std::size_t runs = 0, breaches = 0;
  double tightest = 0.0;  // largest tau / bound seen
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const nrp::Instance instance(nrp::generate(nrp::builtin_spec("NRP-1"), seed));
    for (double ratio : kRatios) {
      for (bool local_search : {true, false}) {
        nrp::AcoParams params;
        params.use_local_search = local_search;
        const auto result = nrp::run_aco(instance, nrp::budget(instance, ratio), params, seed);
        ++runs;
        const double slack = static_cast<double>(params.ants) * params.gamma *
                             static_cast<double>(instance.total_profit()) / params.rho;
        for (std::size_t c = 0; c < instance.customer_count(); ++c) {
          const double tau = result.pheromone.tau[c];
          const double bound = result.pheromone.theta * static_cast<double>(instance.customer(c).profit) + slack;
          if (!(tau > 0.0) || tau > bound) ++breaches;
          tightest = std::max(tightest, tau / bound);
        }
      }
    }
  }
  Verdict v;
  v.pass = breaches == 0;
  v.summary = std::to_string(runs) + " NRP-1 runs, " + std::to_string(breaches) + " breaches, max tau/bound " +
              fmt(tightest, 4);
  return v;
}

// 6. Ordering on NRP-1: mean over three solver seeds per instance.
struct TrendTable {
  std::vector<std::string> lines;
  bool pass = true;
  std::string summary;
};

TrendTable trend(const nrp::AcoParams& aco) {
  const std::vector<nrp::Algorithm> algorithms{nrp::Algorithm::Haco, nrp::Algorithm::Aco, nrp::Algorithm::Fhc,
                                               nrp::Algorithm::Grasp, nrp::Algorithm::Sa};
  constexpr int kInstances = 10, kSolverSeeds = 3;
  TrendTable table;
  std::vector<nrp::Instance> instances;
  for (int s = 1; s <= kInstances; ++s) {
    instances.emplace_back(nrp::generate(nrp::builtin_spec("NRP-1"), static_cast<std::uint64_t>(s)));
  }
  std::vector<std::string> verdicts;
  for (double ratio : kRatios) {
    int ordered = 0, haco_aco = 0, aco_fhc = 0;
    std::vector<double> grand(algorithms.size(), 0.0);
    for (const auto& instance : instances) {
      const auto budget = nrp::budget(instance, ratio);
      std::vector<double> mean(algorithms.size(), 0.0);
      for (std::size_t a = 0; a < algorithms.size(); ++a) {
        auto config = solver(algorithms[a]);
        config.aco = aco;
        for (int k = 1; k <= kSolverSeeds; ++k) {
          mean[a] += static_cast<double>(nrp::solve(instance, budget, config, static_cast<std::uint64_t>(k)).solution.profit()) /
                     kSolverSeeds;
        }
        grand[a] += mean[a] / kInstances;
      }
      haco_aco += mean[0] >= mean[1];
      aco_fhc += mean[1] >= mean[2];
      ordered += mean[0] >= mean[1] && mean[1] >= mean[2];
    }
    const bool order_ok = ordered >= 8;
    const bool grasp_ok = grand[0] >= grand[3];
    const bool sa_ok = grand[0] >= grand[4];
    table.pass = table.pass && order_ok && grasp_ok && sa_ok;
    verdicts.push_back(fmt(ratio) + ": " + std::to_string(ordered) + "/10");
    table.lines.push_back("ratio " + fmt(ratio) + ": HACO>=ACO>=FHC on " + std::to_string(ordered) +
                          "/10 (HACO>=ACO " + std::to_string(haco_aco) + ", ACO>=FHC " + std::to_string(aco_fhc) +
                          "); means haco " + fmt(grand[0]) + " aco " + fmt(grand[1]) + " fhc " + fmt(grand[2]) +
                          " grasp " + fmt(grand[3]) + " sa " + fmt(grand[4]) + (grasp_ok ? "" : " [HACO < GRASP]") +
                          (sa_ok ? "" : " [HACO < SA]"));
  }
  table.summary = "ordering held per ratio ";
  for (std::size_t i = 0; i < verdicts.size(); ++i) table.summary += (i ? ", " : "") + verdicts[i];
  table.summary += " (need 8/10); HACO mean vs GRASP and SA checked per ratio";
  return table;
}

Verdict trend_reproduction() {
  const auto table = trend({});
  Verdict v;
  v.pass = table.pass;
  v.summary = table.summary;
  v.details = table.lines;
  // Same protocol with the opt-in union-aware heuristic, for comparison only.
  nrp::AcoParams marginal;
  marginal.heuristic = nrp::HeuristicMode::Marginal;
  const auto alt = trend(marginal);
  v.details.push_back("for comparison, heuristic=marginal (not the default, does not affect the verdict):");
  for (const auto& line : alt.lines) v.details.push_back("  " + line);
  return v;
}

// 7. NRP-2 at 0.5: ACO time and HACO vs ACO.
Verdict scale_smoke() {
  const nrp::Instance instance(nrp::generate(nrp::builtin_spec("NRP-2"), 1));
  const auto budget = nrp::budget(instance, 0.5);
  double slowest = 0.0;
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto aco = nrp::solve(instance, budget, solver(nrp::Algorithm::Aco), seed);
    const auto haco = nrp::solve(instance, budget, solver(nrp::Algorithm::Haco), seed);
    slowest = std::max(slowest, aco.seconds);
    wins += haco.solution.profit() >= aco.solution.profit();
  }
  Verdict v;
  v.pass = slowest <= 120.0 && wins >= 7;
  v.summary = "slowest ACO run " + fmt(slowest, 3) + " s (limit 120), HACO >= ACO on " + std::to_string(wins) + "/10 seeds";
  return v;
}

// 8. Same config and seeds give the same CSV (minus time) and the same
// solutions for any number of jobs; generation and single solves repeat too.
std::string strip_times(const std::string& csv) {
  std::istringstream in(csv);
  std::string out, line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    if (fields.size() > 7) fields[7].clear();
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
    out += '\n';
  }
  return out;
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "nrp_acceptance";
  std::filesystem::create_directories(dir);
  nrp::save_instance(oracle::toy_a(), dir / "toy.nrp");
  auto rng = nrp::Rng::stream(nrp::StreamPurpose::TestData, 108);
  nrp::save_instance(oracle::random_small(rng, 20, 12), dir / "small.nrp");

  const std::string text =
      "instance = gen NRP-1 1..2\n"
      "instance = file toy.nrp\n"
      "instance = file small.nrp\n"
      "ratios = 0.3 0.5 0.7\n"
      "seeds = 1..2\n"
      "[haco]\n[aco]\n[fhc]\n[grasp]\n[sa]\nmax_moves = 50000\n[exact]\n";
  auto config = nrp::parse_bench_config(text, dir);
  std::vector<std::vector<nrp::RunRecord>> runs;
  for (std::size_t jobs : {1, 1, 4, 7}) {
    config.jobs = jobs;
    runs.push_back(nrp::run_bench(config));
  }
  std::size_t mismatches = 0;
  const auto reference = strip_times(nrp::csv_text(runs[0]));
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (strip_times(nrp::csv_text(runs[r])) != reference) ++mismatches;
    for (std::size_t i = 0; i < runs[0].size(); ++i) mismatches += runs[r][i].selected != runs[0][i].selected;
  }
  // Generator and a single solve, repeated.
  for (const auto& name : nrp::builtin_spec_names()) {
    mismatches += nrp::write_instance(nrp::generate(nrp::builtin_spec(name), 77)) !=
                  nrp::write_instance(nrp::generate(nrp::builtin_spec(name), 77));
  }
  const nrp::Instance nrp1(nrp::generate(nrp::builtin_spec("NRP-1"), 5));
  for (auto algorithm : {nrp::Algorithm::Haco, nrp::Algorithm::Grasp, nrp::Algorithm::Sa}) {
    const auto b = nrp::budget(nrp1, 0.5);
    mismatches += nrp::solve(nrp1, b, solver(algorithm), 3).solution.selected() !=
                  nrp::solve(nrp1, b, solver(algorithm), 3).solution.selected();
  }
  std::size_t errors = 0;
  for (const auto& r : runs[0]) errors += !r.error.empty();
  std::filesystem::remove_all(dir);

  Verdict v;
  v.pass = mismatches == 0;
  v.summary = std::to_string(runs[0].size()) + " cells x jobs {1, 1, 4, 7}, " + std::to_string(mismatches) +
              " mismatches (" + std::to_string(errors) + " guarded exact cells recorded as errors)";
  return v;
}

// 9. Generator output matches the family recipes.
Verdict generator_conformance() {
  const std::vector<std::pair<std::size_t, std::size_t>> totals{{140, 100}, {620, 500}, {1500, 500}, {3250, 750},
                                                                {1500, 1000}};
  std::size_t generated = 0, bad = 0;
  std::string first;
  const auto& names = nrp::builtin_spec_names();
  for (std::size_t f = 0; f < names.size(); ++f) {
    const auto spec = nrp::builtin_spec(names[f]);
    std::vector<std::size_t> level_of;
    for (std::size_t l = 0; l < spec.levels.size(); ++l) level_of.insert(level_of.end(), spec.levels[l].count, l);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto data = nrp::generate(spec, seed);
      ++generated;
      std::vector<std::string> problems;
      if (!nrp::validate(data).empty()) problems.push_back("validate");
      if (data.costs.size() != totals[f].first || data.customers.size() != totals[f].second) {
        problems.push_back("counts");
      }
      for (std::size_t r = 0; r < data.costs.size() && r < level_of.size(); ++r) {
        const auto& level = spec.levels[level_of[r]];
        if (data.costs[r] < level.cost_min || data.costs[r] > level.cost_max) {
          problems.push_back("cost range");
          break;
        }
      }
      std::vector<std::size_t> degree(data.costs.size(), 0);
      for (const auto& dep : data.dependencies) {
        const auto from = static_cast<std::size_t>(dep.before - 1);
        ++degree[from];
        if (level_of[static_cast<std::size_t>(dep.after - 1)] != level_of[from] + 1) problems.push_back("edge level");
      }
      for (std::size_t r = 0; r < degree.size(); ++r) {
        if (degree[r] > spec.levels[level_of[r]].max_children) {
          problems.push_back("out-degree");
          break;
        }
      }
      for (const auto& c : data.customers) {
        if (c.profit < spec.profit_min || c.profit > spec.profit_max || c.requests.size() < spec.request_min ||
            c.requests.size() > spec.request_max) {
          problems.push_back("customer range");
          break;
        }
      }
      if (!problems.empty()) {
        ++bad;
        if (first.empty()) first = names[f] + " seed " + std::to_string(seed) + ": " + problems.front();
      }
    }
  }
  Verdict v;
  v.pass = bad == 0 && generated == 100;
  v.summary = std::to_string(generated) + " instances over NRP-1..5, " + std::to_string(bad) + " nonconforming";
  if (!first.empty()) v.details.push_back(first);
  return v;
}

}  // namespace

int main() {
  const auto cases = small_cases(102, 100);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"feasibility", feasibility},
      {"oracle equivalence", [&] { return oracle_equivalence(cases); }},
      {"fhc certificate", [&] { return fhc_certificate(cases); }},
      {"probability normalisation", normalisation},
      {"pheromone bound", pheromone_bound},
      {"trend reproduction", trend_reproduction},
      {"scale smoke test", scale_smoke},
      {"determinism", determinism},
      {"generator conformance", generator_conformance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what(), {}};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << i + 1 << ' ' << criteria[i].first << ": " << v.summary << " ("
              << fmt(seconds_since(start), 1) << " s)\n";
    for (const auto& d : v.details) std::cout << "       " << d << '\n';
    std::cout.flush();
  }
  std::cout << (failed ? std::to_string(failed) + " of 9 criteria failed\n" : "all 9 criteria passed\n");
  return failed ? 1 : 0;
}
