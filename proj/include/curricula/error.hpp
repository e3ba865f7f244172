#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace curricula {

/// Bad caller input: malformed arguments, precondition violations.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A curriculum or degree plan failed structural validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requisite graph contains a directed cycle.
class CycleError : public ValidationError {
 public:
  explicit CycleError(std::vector<std::string> cycle)
      : ValidationError(describe(cycle)), cycle_(std::move(cycle)) {}

  /// Vertex sequence of one cycle, starting at its smallest id.
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  static std::string describe(const std::vector<std::string>& cycle) {
    std::string text = "requisite cycle:";
    for (const auto& id : cycle) text += " " + id + " ->";
    if (!cycle.empty()) text += " " + cycle.front();
    return text;
  }

  std::vector<std::string> cycle_;
};

/// Text input could not be parsed; carries the 1-based line and column name.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) +
                           (column.empty() ? "" : ", column '" + column + "'") + ": " +
                           what),
        line_(line),
        column_(std::move(column)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::string column_;
};

/// Statistical computation is undefined for the given data.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generation targets cannot be met by any curriculum the generator can build.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace curricula
