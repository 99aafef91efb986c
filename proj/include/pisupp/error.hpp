#pragma once

#include <stdexcept>
#include <string>

namespace pisupp {

/// Error categories. The CLI prints the category name on stderr so scripts can match on it.
enum class ErrorKind {
  CompositeCharacteristic,
  ReduciblePolynomial,
  DuplicateVariable,
  ExtensionTooLarge,
  DivisionByZero,
  FieldMismatch,
  NotARefinement,
  NonPolynomialEntry,
  NotPNilpotent,
  DimensionMismatch,
  BlockTooBig,
  SpecMismatch,
  InfiniteExtension,
  AllCoefficientsZero,
  FlatnessFailure,
  NotFlat,
  ZeroLinearPart,
  BudgetExceeded,
  DimensionTooLarge,
  SyntaxError,
  ValidationError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  const char* category() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace pisupp
