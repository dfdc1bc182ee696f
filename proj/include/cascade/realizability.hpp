#pragma once

#include "cascade/composition.hpp"

namespace lqss {

struct TriangularityReport {
  bool is_triangular = true;
  /// Max-norm over the strict upper 2x2 blocks of A (absolute).
  double max_upper_residual = 0.0;
  double tolerance_used = 0.0;
  /// max(1, |A|_max); a block counts as zero when its norm <= tolerance * scale.
  double scale = 1.0;
};

/// Max-norm of the 2x2 blocks strictly above the block diagonal of F.
double strict_upper_block_norm(const RMatrix& f);

/// Pure-cascade realizability: A = 2 Theta (R + Im{K^dag K}) must be lower
/// 2x2 block triangular.
TriangularityReport is_cascade_realizable(const SlhSystem& sys, double tol = 1e-9);

class NotCascadeRealizableError : public Error {
 public:
  explicit NotCascadeRealizableError(TriangularityReport report);

  const TriangularityReport& report() const noexcept { return report_; }

 private:
  TriangularityReport report_;
};

/// Splits a realizable system into G1 = (S, K1, R11), Gk = (I, Kk, Rkk).
/// Throws NotCascadeRealizableError.
CascadeChain decompose_cascade(const SlhSystem& sys, double tol = 1e-9);

}  // namespace lqss
