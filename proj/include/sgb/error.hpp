#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgb {

enum class ErrorKind {
  ZeroInverse,
  DimensionMismatch,
  ZeroPolynomial,
  InvalidDegree,
  InvalidArgument,
  CapExhausted,
  UndefinedBound,
  OmegaOutOfRange,
  UnitIdeal,
  NotHomogeneous,
  DegreeTooSmall,
  EmptyBasis,
  BudgetExceeded,
  SearchExhausted,
  DimensionTooHigh,
  NotLinear,
  ZeroForm,
  ParseError,
  UnknownVariable,
  BadModulus,
};

std::string_view to_string(ErrorKind kind);

/// Every domain failure in the library is reported through this type; the
/// kind is stable and is what the CLI and CSV status column print.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures carry the 1-based position of the offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorKind::ParseError, what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace sgb
