#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace edurisk {

/// Base for every error raised by the library. Callers that only care about
/// "bad input" versus "bug" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (schema config). `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structurally well-formed input that breaks a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A required CSV column is missing or an unexpected one is present.
class SchemaMismatchError : public Error {
 public:
  explicit SchemaMismatchError(std::string column, const std::string& message)
      : Error(message), column_(std::move(column)) {}
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

/// A CSV cell that cannot be interpreted. `row()` counts data rows from 1.
class CellError : public Error {
 public:
  CellError(std::size_t row, std::string column, const std::string& message)
      : Error("row " + std::to_string(row) + ", column '" + column + "': " + message),
        row_(row),
        column_(std::move(column)) {}
  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

class MissingValueError : public CellError {
 public:
  MissingValueError(std::size_t row, std::string column)
      : CellError(row, std::move(column), "missing value") {}
};

/// Numeric argument outside the operation's domain (negative marks, NaN, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnknownAttributeError : public Error {
 public:
  explicit UnknownAttributeError(std::string attribute)
      : Error("unknown attribute '" + attribute + "'"), attribute_(std::move(attribute)) {}
  const std::string& attribute() const noexcept { return attribute_; }

 private:
  std::string attribute_;
};

/// Malformed or incompatible model / report JSON.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace edurisk
