#pragma once

// Benchmark harness: runs every (instance, budget ratio, solver, seed) cell
// of a config and reports one RunRecord per cell as CSV plus a markdown
// summary laid out with instance-ratio rows and solution/time columns per
// solver.
//
// Config format (flat key = value, '#' comments, repeated solver sections):
//
//   instance = gen NRP-1 1..10      # family or recipe file, instance seeds
//   instance = file data/toy.nrp
//   ratios = 0.3 0.5 0.7
//   seeds = 1..3
//   jobs = 4
//   csv = results.csv
//   markdown = results.md
//   dump_dir = dumps                # optional, one solution dump per cell
//   append = false
//
//   [haco]
//   iters = 10
//   ants = 10
//   [fhc]
//   restarts = 100
//   [haco]
//   label = haco-t50
//   iters = 50

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "nrp/generator.hpp"
#include "nrp/instance.hpp"
#include "nrp/instance_io.hpp"
#include "nrp/solvers.hpp"

namespace nrp {

struct InstanceSource {
  enum class Kind { Generated, File };
  Kind kind = Kind::Generated;
  std::string where;  // family name, recipe path or instance path
  std::uint64_t seed = 0;
  std::string name;
};

struct BenchConfig {
  std::vector<InstanceSource> instances;
  std::vector<double> ratios{0.3, 0.5, 0.7};
  std::vector<SolverConfig> solvers;
  std::vector<std::uint64_t> seeds{1};
  std::size_t jobs = 1;
  std::string csv_path;
  std::string markdown_path;
  std::string dump_dir;
  bool append = false;

  void check() const {
    if (instances.empty()) throw std::invalid_argument("bench config lists no instance");
    if (ratios.empty()) throw std::invalid_argument("bench config lists no budget ratio");
    if (solvers.empty()) throw std::invalid_argument("bench config lists no algorithm");
    if (seeds.empty()) throw std::invalid_argument("bench config lists no seed");
    for (double r : ratios) {
      if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("budget ratio outside (0, 1]");
    }
    for (const auto& s : solvers) {
      s.aco.check();
      s.fhc.check();
      s.grasp.check();
      s.sa.check();
    }
  }
};

struct RunRecord {
  std::string instance;
  double ratio = 0.0;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::int64_t profit = 0;
  std::int64_t cost = 0;
  std::int64_t budget = 0;
  double time_s = 0.0;
  std::uint64_t work = 0;  // iterations, restarts or SA moves
  std::string error;       // non-empty when the cell failed
  std::vector<std::size_t> selected;
};

namespace detail {

inline std::vector<std::string> words(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// "7", "1..10" or "1 2 5"
inline std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& w : words(text)) {
    if (auto dots = w.find(".."); dots != std::string::npos) {
      const auto lo = std::stoull(w.substr(0, dots));
      const auto hi = std::stoull(w.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("empty seed range " + w);
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(std::stoull(w));
    }
  }
  return seeds;
}

// Orders digit runs numerically so that "s2" sorts before "s10".
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      auto na = a.substr(i, ei - i), nb = b.substr(j, ej - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

inline std::string format_ratio(double ratio) {
  std::ostringstream out;
  out << ratio;
  return out.str();
}

inline std::string csv_safe(std::string text) {
  for (auto& ch : text) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ' ';
  }
  return text;
}

inline void apply_solver_key(SolverConfig& solver, const std::string& key, const std::string& value) {
  auto real = [&] { return std::stod(value); };
  auto count = [&] { return static_cast<std::size_t>(std::stoull(value)); };
  if (key == "label") solver.label = value;
  else if (key == "iters") solver.aco.iterations = count();
  else if (key == "ants") solver.aco.ants = count();
  else if (key == "alpha") solver.aco.alpha = real();
  else if (key == "beta") solver.aco.beta = real();
  else if (key == "gamma") solver.aco.gamma = real();
  else if (key == "rho") solver.aco.rho = real();
  else if (key == "heuristic") {
    const auto mode = parse_heuristic(value);
    if (!mode) throw std::invalid_argument("heuristic must be static or marginal");
    solver.aco.heuristic = *mode;
  }
  else if (key == "restarts") solver.fhc.restarts = solver.grasp.restarts = count();
  else if (key == "rcl") solver.grasp.rcl_length = count();
  else if (key == "lm_beta") solver.sa.lm_beta = real();
  else if (key == "initial_temp") solver.sa.initial_temp = real();
  else if (key == "final_temp") solver.sa.final_temp = real();
  else if (key == "moves_per_temp") solver.sa.moves_per_temp = count();
  else if (key == "max_moves") solver.sa.max_moves = std::stoull(value);
  else throw std::invalid_argument("unknown solver key '" + key + "'");
}

}  // namespace detail

/// Parses a bench config. Relative paths are resolved against `base_dir`.
inline BenchConfig parse_bench_config(std::string_view text, const std::filesystem::path& base_dir = {}) {
  BenchConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> section;  // index into config.solvers
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return (path.is_absolute() || base_dir.empty() ? path : base_dir / path).string();
  };

  while (std::getline(in, line)) {
    ++line_no;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + why);
    };
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto trimmed = detail::trim(line);
    if (trimmed.empty()) continue;

    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') fail("unterminated section header");
      const auto name = detail::trim(std::string_view(trimmed).substr(1, trimmed.size() - 2));
      auto algorithm = parse_algorithm(name);
      if (!algorithm) fail("unknown algorithm '" + name + "'");
      config.solvers.emplace_back().algorithm = *algorithm;
      section = config.solvers.size() - 1;
      continue;
    }

    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const auto key = detail::trim(std::string_view(trimmed).substr(0, eq));
    const auto value = detail::trim(std::string_view(trimmed).substr(eq + 1));
    try {
      if (section) {
        detail::apply_solver_key(config.solvers[*section], key, value);
        continue;
      }
      if (key == "instance") {
        auto parts = detail::words(value);
        if (parts.size() == 3 && parts[0] == "gen") {
          const bool builtin = std::find(builtin_spec_names().begin(), builtin_spec_names().end(),
                                         parts[1]) != builtin_spec_names().end();
          const auto where = builtin ? parts[1] : resolve(parts[1]);
          const auto family = builtin ? parts[1] : std::filesystem::path(parts[1]).stem().string();
          for (auto seed : detail::parse_seed_list(parts[2])) {
            config.instances.push_back({InstanceSource::Kind::Generated, where, seed,
                                        family + "-s" + std::to_string(seed)});
          }
        } else if (parts.size() == 2 && parts[0] == "file") {
          config.instances.push_back({InstanceSource::Kind::File, resolve(parts[1]), 0,
                                      std::filesystem::path(parts[1]).stem().string()});
        } else {
          fail("instance must be 'gen <family|recipe> <seeds>' or 'file <path>'");
        }
      } else if (key == "ratios") {
        config.ratios.clear();
        for (const auto& w : detail::words(value)) config.ratios.push_back(std::stod(w));
      } else if (key == "seeds") {
        config.seeds = detail::parse_seed_list(value);
      } else if (key == "jobs") {
        config.jobs = static_cast<std::size_t>(std::stoull(value));
      } else if (key == "csv") {
        config.csv_path = resolve(value);
      } else if (key == "markdown") {
        config.markdown_path = resolve(value);
      } else if (key == "dump_dir") {
        config.dump_dir = resolve(value);
      } else if (key == "append") {
        config.append = value == "true" || value == "1" || value == "yes";
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      if (std::string_view(e.what()).starts_with("config line")) throw;
      fail(e.what());
    } catch (const std::out_of_range&) {
      fail("value out of range for '" + key + "'");
    }
  }
  config.check();
  return config;
}

inline ProblemData load_source(const InstanceSource& source) {
  if (source.kind == InstanceSource::Kind::File) return read_problem(read_text_file(source.where));
  const bool builtin = std::find(builtin_spec_names().begin(), builtin_spec_names().end(), source.where) !=
                       builtin_spec_names().end();
  const auto spec = builtin ? builtin_spec(source.where) : parse_gen_spec(read_text_file(source.where));
  return generate(spec, source.seed);
}

/// File that receives the solution dump of one cell.
inline std::filesystem::path dump_path(const std::filesystem::path& dir, const RunRecord& r) {
  return dir / (r.instance + "_" + detail::format_ratio(r.ratio) + "_" + r.algorithm + "_" +
                std::to_string(r.seed) + ".sol");
}

inline bool record_less(const RunRecord& a, const RunRecord& b) {
  if (a.instance != b.instance) return detail::natural_less(a.instance, b.instance);
  if (a.ratio != b.ratio) return a.ratio < b.ratio;
  if (a.algorithm != b.algorithm) return detail::natural_less(a.algorithm, b.algorithm);
  return a.seed < b.seed;
}

/// Runs every cell, up to `config.jobs` at a time. The returned records are
/// sorted by (instance, ratio, algorithm, seed) and, apart from time_s, do not
/// depend on the number of jobs.
inline std::vector<RunRecord> run_bench(const BenchConfig& config) {
  config.check();
  struct Loaded {
    std::optional<Instance> instance;
    std::string error;
  };
  std::vector<Loaded> loaded(config.instances.size());
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    try {
      loaded[i].instance.emplace(load_source(config.instances[i]));
    } catch (const std::exception& e) {
      loaded[i].error = e.what();
    }
  }

  struct Cell {
    std::size_t instance, ratio, solver, seed;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < config.instances.size(); ++i)
    for (std::size_t r = 0; r < config.ratios.size(); ++r)
      for (std::size_t s = 0; s < config.solvers.size(); ++s)
        for (std::size_t k = 0; k < config.seeds.size(); ++k) cells.push_back({i, r, s, k});

  if (!config.dump_dir.empty()) std::filesystem::create_directories(config.dump_dir);
  std::vector<RunRecord> records(cells.size());
  auto run_cell = [&](std::size_t index) {
    const auto& cell = cells[index];
    auto& record = records[index];
    record.instance = config.instances[cell.instance].name;
    record.ratio = config.ratios[cell.ratio];
    record.algorithm = config.solvers[cell.solver].name();
    record.seed = config.seeds[cell.seed];
    const auto& slot = loaded[cell.instance];
    if (!slot.instance) {
      record.error = slot.error;
      return;
    }
    try {
      record.budget = budget(*slot.instance, record.ratio);
      auto outcome = solve(*slot.instance, record.budget, config.solvers[cell.solver], record.seed);
      record.profit = outcome.solution.profit();
      record.cost = outcome.solution.cost();
      record.time_s = outcome.seconds;
      record.work = outcome.work;
      record.selected = outcome.solution.selected();
      if (!config.dump_dir.empty()) {
        std::ofstream out(dump_path(config.dump_dir, record), std::ios::binary | std::ios::trunc);
        out << write_dump(outcome.solution, record.budget);
        if (!out) throw std::runtime_error("cannot write solution dump");
      }
    } catch (const std::exception& e) {
      record.error = e.what();
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(config.jobs, cells.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    }
  }

  std::stable_sort(records.begin(), records.end(), record_less);
  return records;
}

inline constexpr std::string_view kCsvHeader = "instance,ratio,algorithm,seed,profit,cost,budget,time_s,extra";

inline std::string csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << detail::csv_safe(r.instance) << ',' << detail::format_ratio(r.ratio) << ','
      << detail::csv_safe(r.algorithm) << ',' << r.seed << ',';
  if (r.error.empty()) {
    out << r.profit << ',' << r.cost << ',' << r.budget << ',' << std::fixed << std::setprecision(6)
        << r.time_s << ',' << r.work;
  } else {
    out << ",," << r.budget << ',' << std::fixed << std::setprecision(6) << r.time_s
        << ",ERROR " << detail::csv_safe(r.error);
  }
  return out.str();
}

inline std::string csv_text(const std::vector<RunRecord>& records, bool header = true) {
  std::string text;
  if (header) {
    text += kCsvHeader;
    text += '\n';
  }
  for (const auto& r : records) {
    text += csv_row(r);
    text += '\n';
  }
  return text;
}

struct CellSummary {
  std::size_t runs = 0;
  std::size_t errors = 0;
  double mean_profit = 0.0;
  std::int64_t best_profit = 0;
  double mean_time = 0.0;
};

using SummaryKey = std::tuple<std::string, double, std::string>;  // instance, ratio, algorithm

/// Mean/best profit and mean time over seeds for each (instance, ratio,
/// algorithm).
inline std::map<SummaryKey, CellSummary> summarize(const std::vector<RunRecord>& records) {
  std::map<SummaryKey, CellSummary> summary;
  for (const auto& r : records) {
    auto& cell = summary[{r.instance, r.ratio, r.algorithm}];
    if (!r.error.empty()) {
      ++cell.errors;
      continue;
    }
    cell.best_profit = cell.runs ? std::max(cell.best_profit, r.profit) : r.profit;
    ++cell.runs;
    cell.mean_profit += (static_cast<double>(r.profit) - cell.mean_profit) / static_cast<double>(cell.runs);
    cell.mean_time += (r.time_s - cell.mean_time) / static_cast<double>(cell.runs);
  }
  return summary;
}

inline std::string markdown_summary(const std::vector<RunRecord>& records) {
  std::vector<std::string> algorithms;
  std::vector<std::pair<std::string, double>> rows;
  for (const auto& r : records) {
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
    if (std::find(rows.begin(), rows.end(), std::pair{r.instance, r.ratio}) == rows.end()) {
      rows.emplace_back(r.instance, r.ratio);
    }
  }
  std::sort(algorithms.begin(), algorithms.end(),
            [](const auto& a, const auto& b) { return detail::natural_less(a, b); });
  const auto summary = summarize(records);

  std::ostringstream out;
  out << "| Instance |";
  for (const auto& a : algorithms) out << ' ' << a << " solution | " << a << " time(s) |";
  out << "\n|---|";
  for (std::size_t i = 0; i < algorithms.size(); ++i) out << "---:|---:|";
  out << '\n';
  out << std::fixed;
  for (const auto& [instance, ratio] : rows) {
    out << "| " << instance << '-' << detail::format_ratio(ratio) << " |";
    for (const auto& a : algorithms) {
      auto it = summary.find({instance, ratio, a});
      if (it == summary.end() || it->second.runs == 0) {
        out << (it == summary.end() ? " - | - |" : " error | - |");
        continue;
      }
      const auto& cell = it->second;
      out << ' ' << std::setprecision(1) << cell.mean_profit;
      if (cell.runs > 1) out << " (best " << cell.best_profit << ')';
      if (cell.errors) out << " [" << cell.errors << " failed]";
      out << " | " << std::setprecision(3) << cell.mean_time << " |";
    }
    out << '\n';
  }
  out << "\nSolution cells show the mean profit over seeds (best in parentheses); "
         "time is the mean wall time of the solver call.\n";
  return out.str();
}

/// Writes the CSV (and markdown / dumps when configured). With `append` set
/// and an existing non-empty CSV, rows are appended without a second header.
inline void write_bench_outputs(const BenchConfig& config, const std::vector<RunRecord>& records) {
  if (!config.csv_path.empty()) {
    const bool has_content = config.append && std::filesystem::exists(config.csv_path) &&
                             std::filesystem::file_size(config.csv_path) > 0;
    std::ofstream out(config.csv_path, std::ios::binary | (config.append ? std::ios::app : std::ios::trunc));
    if (!out) throw std::runtime_error("cannot write " + config.csv_path);
    out << csv_text(records, !has_content);
  }
  if (!config.markdown_path.empty()) {
    std::ofstream out(config.markdown_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + config.markdown_path);
    out << markdown_summary(records);
  }
}

}  // namespace nrp
