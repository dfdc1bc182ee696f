#pragma once

#include "cascade/realizability.hpp"
#include "cascade/schur.hpp"

namespace lqss {

/// M = U^dag M_hat U with M_hat lower triangular.
struct SchurLower {
  CMatrix U;
  CMatrix M_hat;
};

/// Real orthogonal symplectic change of variables z = V x.
struct SymplecticTransform {
  RMatrix V;
};

/// Mode-space generator M = (1/2) Sigma Theta Sigma^dag (Rt - i Kt^dag Kt).
/// It satisfies [Sigma; Sigma^#] A [Sigma^dag, Sigma^T] = diag(M, M^#).
CMatrix mode_matrix(const PassiveForm& pf);

/// Lower-triangular Schur form, obtained from the upper form M = Q T Q^dag
/// by reversing the basis: U = P Q^dag, M_hat = P T P.
SchurLower schur_lower(const CMatrix& m);

/// V = 4 Re{Sigma^dag U Sigma}. Throws NonUnitaryInput.
SymplecticTransform build_symplectic(const CMatrix& u, double tol = 1e-9);

/// (S, K V^T, V R V^T), the transfer-function equivalent system in z = V x
/// for orthogonal V.
SlhSystem transform_system(const SlhSystem& sys, const SymplecticTransform& v);

struct PassiveOptions {
  double passivity_tol = 1e-9;
  double triangular_tol = 1e-9;
  double orthogonality_tol = 1e-9;
};

struct PassiveRealization {
  SlhSystem realized;  // G' = (S, K V^T, V R V^T)
  SymplecticTransform transform;
  CascadeChain chain;
  SchurLower schur;
  TriangularityReport triangularity;
  bool stages_passive = false;
};

/// Transfer-function realization of a passive system by a pure cascade of
/// one-mode passive oscillators. Throws NotPassive or ConvergenceFailure.
PassiveRealization passive_realize(const SlhSystem& sys, const PassiveOptions& opts = {});

}  // namespace lqss
