#include "folia/error.hpp"

namespace folia {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TruncationMismatch: return "TruncationMismatch";
    case ErrorCode::DivisionByNonUnit: return "DivisionByNonUnit";
    case ErrorCode::NonVanishingShift: return "NonVanishingShift";
    case ErrorCode::SingularLinearPart: return "SingularLinearPart";
    case ErrorCode::NonUnitFactor: return "NonUnitFactor";
    case ErrorCode::NotPolynomialInX: return "NotPolynomialInX";
    case ErrorCode::NotHolomorphicAtInfinity: return "NotHolomorphicAtInfinity";
    case ErrorCode::AxisNotInvariant: return "AxisNotInvariant";
    case ErrorCode::ZeroAxisComponent: return "ZeroAxisComponent";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::NotSaddleNode: return "NotSaddleNode";
    case ErrorCode::TruncationTooShallow: return "TruncationTooShallow";
    case ErrorCode::UnsupportedClass: return "UnsupportedClass";
    case ErrorCode::IrrationalEigendata: return "IrrationalEigendata";
    case ErrorCode::NonRationalScaling: return "NonRationalScaling";
    case ErrorCode::ZeroLinearCoefficient: return "ZeroLinearCoefficient";
    case ErrorCode::NonSingularInput: return "NonSingularInput";
    case ErrorCode::NotEcalle2: return "NotEcalle2";
    case ErrorCode::RationalInput: return "RationalInput";
    case ErrorCode::VanishingG: return "VanishingG";
    case ErrorCode::SingularEncounter: return "SingularEncounter";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::NonHyperbolic: return "NonHyperbolic";
    case ErrorCode::PoleOfGamma: return "PoleOfGamma";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonPolynomialDenominator: return "NonPolynomialDenominator";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string module, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + " [" + module + "]: " + what),
      code_(code),
      module_(std::move(module)) {}

ParseError::ParseError(std::size_t position, const std::string& what)
    : Error(ErrorCode::ParseError, "cli", "at position " + std::to_string(position) + ": " + what),
      position_(position) {}

void fail(ErrorCode code, std::string module, const std::string& what) {
  throw Error(code, std::move(module), what);
}

}  // namespace folia
