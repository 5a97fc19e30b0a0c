#pragma once

#include <stdexcept>
#include <string>

namespace mq {

// Base class for all library errors. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// DSL text could not be tokenized or parsed. Carries 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_;
  int col_;
};

// A parabose expression that is not expanded into Green components, or whose
// component index is out of range for the configured order.
class UnsupportedParabosePattern : public Error {
 public:
  using Error::Error;
};

// Mode lookup failed on a Fock space.
class UnknownMode : public Error {
 public:
  using Error::Error;
};

// Expression species is incompatible with the statistics of the target space.
class StatisticsMismatch : public Error {
 public:
  using Error::Error;
};

// Combining operators or states that live on different spaces.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

// A construction would exceed the configured dimension bound, or a sector
// parameter exceeds the cutoff.
class DimensionOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace mq
