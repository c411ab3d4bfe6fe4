#pragma once

// Canonical instance text format (1-based requirement ids):
//
//   L                      number of levels
//   k                      per level: requirement count ...
//   c_1 ... c_k            ... and their costs
//   D                      dependency count
//   p q                    D lines, p must be developed before q
//   M                      customer count
//   w s r_1 ... r_s        M lines: profit, request count, requested ids
//
// Ids are assigned level by level in file order. Blank lines are ignored.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nrp/instance.hpp"

namespace nrp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& cause)
      : std::runtime_error("line " + std::to_string(line) + ": " + cause), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline std::string write_instance(const ProblemData& data) {
  std::ostringstream out;
  out << data.level_sizes.size() << '\n';
  std::size_t next = 0;
  for (auto count : data.level_sizes) {
    out << count << '\n';
    for (std::size_t i = 0; i < count; ++i) {
      if (i) out << ' ';
      out << data.costs.at(next++);
    }
    out << '\n';
  }
  out << data.dependencies.size() << '\n';
  for (const auto& dep : data.dependencies) out << dep.before << ' ' << dep.after << '\n';
  out << data.customers.size() << '\n';
  for (const auto& customer : data.customers) {
    out << customer.profit << ' ' << customer.requests.size();
    for (auto id : customer.requests) out << ' ' << id;
    out << '\n';
  }
  return out.str();
}

inline std::string write_instance(const Instance& instance) { return write_instance(instance.data()); }

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next non-blank line split into integers.
  std::vector<std::int64_t> next(const char* what) {
    while (pos_ < text_.size()) {
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      auto numbers = split(line);
      if (!numbers.empty()) return numbers;
    }
    throw ParseError(line_no_ + 1, std::string("unexpected end of input, expected ") + what);
  }

  std::int64_t single(const char* what) {
    auto values = next(what);
    if (values.size() != 1) {
      throw ParseError(line_no_, std::string("expected a single value for ") + what + ", found " +
                                     std::to_string(values.size()));
    }
    return values.front();
  }

  std::size_t count(const char* what) {
    auto value = single(what);
    if (value < 0) throw ParseError(line_no_, std::string("negative ") + what);
    return static_cast<std::size_t>(value);
  }

  void expect_end() {
    while (pos_ < text_.size()) {
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
        throw ParseError(line_no_, "trailing content after the last customer");
      }
    }
  }

  std::size_t line() const noexcept { return line_no_; }

 private:
  std::vector<std::int64_t> split(std::string_view line) const {
    std::vector<std::int64_t> values;
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
        ++i;
        continue;
      }
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
      const auto consumed = static_cast<std::size_t>(ptr - (line.data() + i));
      const bool separated = consumed + i == line.size() || line[consumed + i] == ' ' ||
                             line[consumed + i] == '\t' || line[consumed + i] == '\r';
      if (ec != std::errc() || !separated) {
        auto stop = line.find_first_of(" \t\r", i);
        throw ParseError(line_no_, "not an integer: '" + std::string(line.substr(i, stop - i)) + "'");
      }
      values.push_back(value);
      i += consumed;
    }
    return values;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

}  // namespace detail

/// Parses the canonical format. Structural problems raise ParseError with
/// the offending line; semantic problems (cycles, bad ids) are left to
/// validate() / Instance construction.
inline ProblemData read_problem(std::string_view text) {
  detail::LineReader reader(text);
  ProblemData data;

  const auto levels = reader.count("level count");
  for (std::size_t level = 0; level < levels; ++level) {
    const auto count = reader.count("level requirement count");
    auto costs = reader.next("requirement costs");
    if (costs.size() != count) {
      throw ParseError(reader.line(), "level " + std::to_string(level + 1) + " declares " +
                                          std::to_string(count) + " requirements but lists " +
                                          std::to_string(costs.size()) + " costs");
    }
    data.level_sizes.push_back(count);
    data.costs.insert(data.costs.end(), costs.begin(), costs.end());
  }

  const auto dependencies = reader.count("dependency count");
  for (std::size_t i = 0; i < dependencies; ++i) {
    auto pair = reader.next("dependency");
    if (pair.size() != 2) {
      throw ParseError(reader.line(), "dependency line needs exactly 2 ids, found " +
                                          std::to_string(pair.size()));
    }
    data.dependencies.push_back({pair[0], pair[1]});
  }

  const auto customers = reader.count("customer count");
  for (std::size_t i = 0; i < customers; ++i) {
    auto fields = reader.next("customer");
    if (fields.size() < 2) throw ParseError(reader.line(), "customer line needs profit and request count");
    if (fields[1] < 0 || static_cast<std::size_t>(fields[1]) != fields.size() - 2) {
      throw ParseError(reader.line(), "customer declares " + std::to_string(fields[1]) +
                                          " requests but lists " + std::to_string(fields.size() - 2));
    }
    data.customers.push_back({fields[0], {fields.begin() + 2, fields.end()}});
  }

  reader.expect_end();
  return data;
}

inline Instance read_instance(std::string_view text) { return Instance(read_problem(text)); }

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Instance load_instance(const std::filesystem::path& path) {
  return read_instance(read_text_file(path));
}

inline void save_instance(const ProblemData& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_instance(data);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace nrp
