#include "sgb/error.hpp"

namespace sgb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CapExhausted: return "CapExhausted";
    case ErrorKind::UndefinedBound: return "UndefinedBound";
    case ErrorKind::OmegaOutOfRange: return "OmegaOutOfRange";
    case ErrorKind::UnitIdeal: return "UnitIdeal";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::EmptyBasis: return "EmptyBasis";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorKind::NotLinear: return "NotLinear";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::BadModulus: return "BadModulus";
  }
  return "Unknown";
}

}  // namespace sgb
