#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lqss {

enum class ErrorKind {
  NonUnitaryScattering,
  NonSymmetricR,
  NonHermitianRtilde,
  NonFinite,
  DimensionMismatch,
  NotPassive,
  FieldCountMismatch,
  BadResidual,
  NotCascadeRealizable,
  ConvergenceFailure,
  NonUnitaryInput,
  ResolventSingular,
  ScatteringMismatch,
  OddDimension,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lqss
