#pragma once

#include <stdexcept>
#include <string>

namespace maxlin {

/// Base for anything caused by a bad configuration or parameter value.
/// The CLI maps these to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Base for anything caused by unreadable or inconsistent input data.
/// The CLI maps these to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : ConfigError {
  using ConfigError::ConfigError;
};

/// Min-plus Kleene star diverges: some directed cycle has negative weight.
struct NegativeCycle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A min-plus matrix-vector product produced an infinite coordinate
/// (some row of the matrix is entirely +inf).
struct InfiniteCoordinate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptySample : ConfigError {
  using ConfigError::ConfigError;
};

/// Point handed to the cell map violates a facet inequality beyond tol.
struct PointOutside : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two distinct tight spanning trees solve to the same point (or a
/// constraint is tight beyond the defining tree): the matrix is not generic.
struct Degenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No point of the polytrope attains exactly the requested tight set.
struct UnrealizableCell : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UncoverableElement : ConfigError {
  using ConfigError::ConfigError;
};

struct TooFewObservations : ConfigError {
  using ConfigError::ConfigError;
};

struct InvalidProbability : ConfigError {
  using ConfigError::ConfigError;
};

struct InvalidInterval : ConfigError {
  using ConfigError::ConfigError;
};

/// CSV/JSON input could not be parsed; row/col are 1-based, 0 = unknown.
struct ParseError : DataError {
  ParseError(const std::string& what, long row = 0, long col = 0)
      : DataError(format(what, row, col)), row(row), col(col) {}
  long row = 0;
  long col = 0;

 private:
  static std::string format(const std::string& what, long row, long col) {
    std::string s = what;
    if (row > 0) s += " (row " + std::to_string(row) + ")";
    if (col > 0) s += " (column " + std::to_string(col) + ")";
    return s;
  }
};

struct AllRowsDropped : DataError {
  using DataError::DataError;
};

}  // namespace maxlin
