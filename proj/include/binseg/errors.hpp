#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace binseg {

// K splits with min segment length m need at least (K+1)*m data points.
class InfeasibleError : public std::domain_error {
 public:
  InfeasibleError(std::int64_t n, std::int64_t k, std::int64_t m)
      : std::domain_error("infeasible: " + std::to_string(k) +
                          " splits with min segment length " +
                          std::to_string(m) + " need at least (" +
                          std::to_string(k) + "+1)*" + std::to_string(m) +
                          " = " + std::to_string((k + 1) * m) +
                          " data points, got " + std::to_string(n)),
        n(n), k(k), m(m) {}
  std::int64_t min_data_needed() const { return (k + 1) * m; }
  std::int64_t n, k, m;
};

// Bad input file; line is 1-based, 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path_arg, std::int64_t line_arg,
             const std::string& message)
      : std::runtime_error(path_arg +
                           (line_arg > 0 ? ":" + std::to_string(line_arg)
                                         : std::string()) +
                           ": " + message),
        path(std::move(path_arg)), line(line_arg) {}
  std::string path;
  std::int64_t line;
};

}  // namespace binseg
