#include "cascade/errors.hpp"

namespace lqss {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonUnitaryScattering: return "NonUnitaryScattering";
    case ErrorKind::NonSymmetricR: return "NonSymmetricR";
    case ErrorKind::NonHermitianRtilde: return "NonHermitianRtilde";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPassive: return "NotPassive";
    case ErrorKind::FieldCountMismatch: return "FieldCountMismatch";
    case ErrorKind::BadResidual: return "BadResidual";
    case ErrorKind::NotCascadeRealizable: return "NotCascadeRealizable";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NonUnitaryInput: return "NonUnitaryInput";
    case ErrorKind::ResolventSingular: return "ResolventSingular";
    case ErrorKind::ScatteringMismatch: return "ScatteringMismatch";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace lqss
