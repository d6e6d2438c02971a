#pragma once

#include <stdexcept>
#include <string>

namespace qdense {

enum class ErrorCode {
  DimensionMismatch,
  IndexOutOfRange,
  ZeroForm,
  ZeroPolynomial,
  ConstantPolynomial,
  ZeroModP,
  NotPrime,
  PrimeTooLarge,
  NotARoot,
  DerivativeVanishes,
  NotCoprime,
  PrecisionInsufficient,
  CharacteristicDividesDegree,
  BudgetExceeded,
  DegenerateSpecialization,
  Precondition,
  InvalidParameters,
  ContentDivisible,
  NotExact,
  Syntax,
  NonHomogeneous,
  Schema,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the form parser; carries the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::Syntax, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qdense
