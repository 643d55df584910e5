#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace folia {

enum class ErrorCode {
  TruncationMismatch,
  DivisionByNonUnit,
  NonVanishingShift,
  SingularLinearPart,
  NonUnitFactor,
  NotPolynomialInX,
  NotHolomorphicAtInfinity,
  AxisNotInvariant,
  ZeroAxisComponent,
  ConstraintViolated,
  NotSaddleNode,
  TruncationTooShallow,
  UnsupportedClass,
  IrrationalEigendata,
  NonRationalScaling,
  ZeroLinearCoefficient,
  NonSingularInput,
  NotEcalle2,
  RationalInput,
  VanishingG,
  SingularEncounter,
  StepUnderflow,
  NonHyperbolic,
  PoleOfGamma,
  ParseError,
  NonPolynomialDenominator,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

// Errors raised by the library. `module` names the component that raised it
// so that pipeline reports can surface provenance.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

  // True for violations of an operation's precondition (as opposed to
  // malformed input text).
  bool is_precondition() const noexcept { return code_ != ErrorCode::ParseError; }

 private:
  ErrorCode code_;
  std::string module_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] void fail(ErrorCode code, std::string module, const std::string& what);

}  // namespace folia
