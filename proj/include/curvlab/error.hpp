#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace curvlab {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Precondition violation on an argument (index range, shape mismatch, ...).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Division by a jet whose base value is zero.
class SingularValueError : public Error {
public:
  using Error::Error;
};

/// A derivative was requested from a jet with nothing left to differentiate.
class DegenerateOrderError : public Error {
public:
  using Error::Error;
};

/// The metric is not positive definite, or some other geometric precondition failed.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// Metric-definition text could not be parsed.
class ParseError : public Error {
public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Random metric generation exhausted its resampling budget.
class GenerationError : public Error {
public:
  using Error::Error;
};

/// The constraint system does not have a one-dimensional nullspace.
class NullspaceError : public Error {
public:
  NullspaceError(const std::string& what, int dimension, std::vector<double> singular_values)
      : Error(what), dimension_(dimension), singular_values_(std::move(singular_values)) {}

  int dimension() const { return dimension_; }
  const std::vector<double>& singular_values() const { return singular_values_; }

private:
  int dimension_;
  std::vector<double> singular_values_;
};

}  // namespace curvlab
