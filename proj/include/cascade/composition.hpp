#pragma once

#include <optional>
#include <vector>

#include "cascade/core_model.hpp"

namespace lqss {

/// Ordered one-mode stages G1 ... Gn, stored input-first (G1 receives the
/// input field), plus an optional direct-interaction residual R^d acting on
/// the concatenated modes. R^d must be symmetric with zero 2x2 diagonal blocks.
struct CascadeChain {
  std::vector<SlhSystem> stages;
  std::optional<RMatrix> residual_R;

  Index modes() const noexcept { return static_cast<Index>(stages.size()); }

  /// Throws DimensionMismatch, FieldCountMismatch or BadResidual.
  void validate() const;
};

/// G1 [+] G2: fields and modes stacked, S = diag(S1, S2), R = diag(R1, R2).
SlhSystem concatenation(const SlhSystem& g1, const SlhSystem& g2);

/// G2 <| G1 (G1 feeds G2) on x = (x_{G1}, x_{G2}):
///   S = S2 S1,  K = [S2 K1, K2],  R = [[R1, C^T], [C, R2]],  C = Im{K2^dag S2 K1}.
SlhSystem series(const SlhSystem& g2, const SlhSystem& g1);

/// Gn <| ... <| G1 evaluated by the closed-form block structure, then R^d
/// added when present. Without R^d the result has R + Im{K^dag K} lower
/// 2x2 block triangular.
SlhSystem cascade(const CascadeChain& chain);

/// The bilinear direct-interaction Hamiltonian left over when sys is split
/// into stages with S1 = S and Sk = I: upper block (j, k), j < k, equals
/// R_jk - Im{K_k^dag K_j}^T; diagonal blocks are zero.
RMatrix residual_interaction(const SlhSystem& sys);

}  // namespace lqss
