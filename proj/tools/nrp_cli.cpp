// nrp: generate NRP instances, run single solves and benchmark matrices.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 solver guard.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nrp/nrp.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kGuard = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFlags {
  std::optional<std::size_t> iters, ants, restarts, rcl;
  std::optional<double> alpha, beta, gamma, rho, lm_beta;
  std::optional<std::uint64_t> max_moves;
  std::optional<std::string> heuristic;

  void attach(CLI::App& app) {
    app.add_option("--iters", iters, "ACO/HACO iterations (default 10)");
    app.add_option("--ants", ants, "ACO/HACO ants per iteration (default 10)");
    app.add_option("--alpha", alpha, "pheromone exponent (default 1.1)");
    app.add_option("--beta", beta, "heuristic exponent (default 1.5)");
    app.add_option("--gamma", gamma, "deposit scale (default 0.020)");
    app.add_option("--rho", rho, "evaporation rate (default 0.13)");
    app.add_option("--restarts", restarts, "FHC/GRASP restarts (default 100)");
    app.add_option("--rcl", rcl, "GRASP restricted candidate list length (default 10)");
    app.add_option("--lm-beta", lm_beta, "Lundy-Mees control parameter (default 1e-8)");
    app.add_option("--max-moves", max_moves, "SA move cap (default 1000000)");
    app.add_option("--heuristic", heuristic, "ACO/HACO eta: static (default) or marginal");
  }

  void apply(nrp::SolverConfig& config) const {
    if (iters) config.aco.iterations = *iters;
    if (ants) config.aco.ants = *ants;
    if (alpha) config.aco.alpha = *alpha;
    if (beta) config.aco.beta = *beta;
    if (gamma) config.aco.gamma = *gamma;
    if (rho) config.aco.rho = *rho;
    if (heuristic) {
      const auto mode = nrp::parse_heuristic(*heuristic);
      if (!mode) throw UsageError("--heuristic must be static or marginal");
      config.aco.heuristic = *mode;
    }
    if (restarts) config.fhc.restarts = config.grasp.restarts = *restarts;
    if (rcl) config.grasp.rcl_length = *rcl;
    if (lm_beta) config.sa.lm_beta = *lm_beta;
    if (max_moves) config.sa.max_moves = *max_moves;
  }
};

nrp::GenSpec resolve_spec(const std::string& name) {
  const auto& names = nrp::builtin_spec_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return nrp::builtin_spec(name);
  if (std::filesystem::is_regular_file(name)) return nrp::parse_gen_spec(nrp::read_text_file(name));
  try {
    return nrp::builtin_spec(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(e.what()) + " (or a recipe file path)");
  }
}

int cmd_gen(const std::string& spec_name, std::uint64_t seed, const std::string& out) {
  const auto spec = resolve_spec(spec_name);
  const auto data = nrp::generate(spec, seed);
  const nrp::Instance instance(data);
  if (out.empty()) {
    std::cout << nrp::write_instance(data);
  } else {
    nrp::save_instance(data, out);
  }
  std::cerr << spec.name << " seed " << seed << ": " << instance.requirement_count() << " requirements, "
            << instance.customer_count() << " customers, " << data.dependencies.size()
            << " dependencies, total cost " << instance.total_cost() << '\n';
  return kOk;
}

int cmd_solve(const std::string& path, const std::string& algo, double ratio, std::uint64_t seed,
              const SolverFlags& flags, const std::string& dump_path) {
  auto algorithm = nrp::parse_algorithm(algo);
  if (!algorithm) throw UsageError("unknown algorithm '" + algo + "'");
  if (!(ratio > 0.0 && ratio <= 1.0)) throw UsageError("--budget-ratio must lie in (0, 1]");
  nrp::SolverConfig config;
  config.algorithm = *algorithm;
  flags.apply(config);

  const auto instance = nrp::load_instance(path);
  const auto budget = nrp::budget(instance, ratio);
  const auto outcome = nrp::solve(instance, budget, config, seed);
  std::cout << "instance  " << std::filesystem::path(path).stem().string() << '\n'
            << "algorithm " << config.name() << '\n'
            << "seed      " << seed << '\n'
            << "ratio     " << ratio << '\n'
            << "budget    " << budget << '\n'
            << "profit    " << outcome.solution.profit() << '\n'
            << "cost      " << outcome.solution.cost() << '\n'
            << "selected  " << outcome.solution.size() << '\n'
            << "work      " << outcome.work << '\n'
            << "time_s    " << std::fixed << std::setprecision(6) << outcome.seconds << '\n';
  if (!dump_path.empty()) {
    std::ofstream out(dump_path, std::ios::binary | std::ios::trunc);
    out << nrp::write_dump(outcome.solution, budget);
    if (!out) throw std::runtime_error("cannot write " + dump_path);
  }
  return kOk;
}

int cmd_bench(const std::string& config_path, std::optional<std::size_t> jobs, const std::string& out) {
  auto config = nrp::parse_bench_config(nrp::read_text_file(config_path),
                                        std::filesystem::path(config_path).parent_path());
  if (jobs) config.jobs = *jobs;
  if (!out.empty()) {
    config.csv_path = out + ".csv";
    config.markdown_path = out + ".md";
  }
  const auto records = nrp::run_bench(config);
  nrp::write_bench_outputs(config, records);
  if (config.csv_path.empty()) std::cout << nrp::csv_text(records);
  std::cout << nrp::markdown_summary(records);
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.error.empty() ? 0 : 1;
  std::cerr << records.size() << " cells, " << failed << " failed\n";
  return kOk;
}

int cmd_verify(const std::string& instance_path, const std::string& dump_path) {
  const auto instance = nrp::load_instance(instance_path);
  const auto dump = nrp::read_dump(nrp::read_text_file(dump_path));
  const auto problem = nrp::verify_dump(instance, dump);
  if (!problem.empty()) {
    std::cerr << "verify: " << problem << '\n';
    return kData;
  }
  std::cout << "ok: profit " << dump.profit << ", cost " << dump.cost << " <= budget " << dump.budget << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Next Release Problem solver workbench"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out;
  std::string dump;
  std::optional<std::size_t> jobs;

  auto* gen = app.add_subcommand("gen", "generate an instance from a built-in family or recipe file");
  std::string spec_name;
  gen->add_option("spec", spec_name, "NRP-1 .. NRP-5 or a recipe file")->required();
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out, "output file (stdout when omitted)");

  auto* solve = app.add_subcommand("solve", "solve one instance once");
  std::string instance_path;
  std::string algo = "haco";
  double ratio = 0.5;
  SolverFlags flags;
  solve->add_option("instance", instance_path, "instance file")->required();
  solve->add_option("--algo", algo, "haco | aco | fhc | grasp | sa | exact");
  solve->add_option("--budget-ratio", ratio, "budget as a fraction of the total requirement cost");
  solve->add_option("--seed", seed, "solver seed");
  solve->add_option("--dump", dump, "write the selected customers and covered requirements here");
  flags.attach(*solve);

  auto* bench = app.add_subcommand("bench", "run a benchmark matrix from a config file");
  std::string config_path;
  bench->add_option("config", config_path, "bench config file")->required();
  bench->add_option("--jobs", jobs, "concurrent cells (overrides the config)");
  bench->add_option("--out", out, "output prefix: writes <out>.csv and <out>.md");

  auto* verify = app.add_subcommand("verify", "re-evaluate a solution dump against an instance");
  std::string verify_instance, verify_dump;
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("dump", verify_dump, "solution dump written by solve --dump")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(spec_name, seed, out);
    if (*solve) return cmd_solve(instance_path, algo, ratio, seed, flags, dump);
    if (*bench) return cmd_bench(config_path, jobs, out);
    if (*verify) return cmd_verify(verify_instance, verify_dump);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nrp::SolverGuard& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
