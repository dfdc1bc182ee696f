#pragma once

#include "cascade/errors.hpp"
#include "cascade/matrix.hpp"

namespace lqss {

/// Absolute max-norm tolerances used when validating model invariants.
struct Tolerances {
  double unitary = 1e-9;
  double symmetric = 1e-9;
  double build = 1e-9;
};

/// A linear quantum stochastic system G = (S, Kx, x^T R x / 2) with n modes
/// and m fields. The canonical operators are ordered x = (q1, p1, ..., qn, pn).
///
/// The constructor validates shapes, finiteness, unitarity of S and
/// symmetry of R; a constructed SlhSystem always satisfies them.
class SlhSystem {
 public:
  SlhSystem(CMatrix scattering, CMatrix coupling, RMatrix hamiltonian,
            const Tolerances& tol = {});

  /// The series/concatenation identity on m fields: S = I, no modes.
  static SlhSystem identity(Index fields);

  Index modes() const noexcept { return hamiltonian_.rows() / 2; }
  Index fields() const noexcept { return scattering_.rows(); }

  const CMatrix& scattering() const noexcept { return scattering_; }
  const CMatrix& coupling() const noexcept { return coupling_; }
  const RMatrix& hamiltonian() const noexcept { return hamiltonian_; }

  /// m x 2 column block K_j acting on (q_j, p_j); j is zero-based.
  CMatrix coupling_block(Index j) const { return coupling_.middleCols(2 * j, 2); }
  /// 2 x 2 block R_jk; zero-based.
  RMatrix hamiltonian_block(Index j, Index k) const {
    return hamiltonian_.block(2 * j, 2 * k, 2, 2);
  }

 private:
  CMatrix scattering_;
  CMatrix coupling_;
  RMatrix hamiltonian_;
};

// Structural constants.

/// J = [[0, 1], [-1, 0]].
RMatrix symplectic_unit();
/// Theta = diag_n(J), 2n x 2n.
RMatrix theta(Index n);
/// Sigma (n x 2n) maps x to the annihilation operators: a = Sigma x, with
/// row j equal to (1/2, i/2) in columns 2j, 2j+1.
CMatrix sigma(Index n);

struct StructuralConstants {
  explicit StructuralConstants(Index n);

  Index n;
  RMatrix J;
  RMatrix Theta;
  CMatrix Sigma;
};

/// System matrices of the Heisenberg dynamics and the doubled-up output map:
///   A  = 2 Theta (R + Im{K^dag K})          real 2n x 2n
///   B  = 2i Theta [-K^dag S, K^T S^#]       2n x 2m
///   Cd = [K; K^#]                           2m x 2n
///   Dd = diag(S, S^#)                       2m x 2m
struct DoubledStateSpace {
  RMatrix A;
  CMatrix B;
  CMatrix Cd;
  CMatrix Dd;

  Index modes() const noexcept { return A.rows() / 2; }
  Index fields() const noexcept { return Dd.rows() / 2; }
};

DoubledStateSpace build_state_space(const SlhSystem& sys, const Tolerances& tol = {});

/// Annihilation-operator parametrization H = a^dag Rt a / 2 + c, L = Kt a.
struct PassiveForm {
  CMatrix R_tilde;  // n x n Hermitian
  CMatrix K_tilde;  // m x n
  double offset = 0.0;

  Index modes() const noexcept { return R_tilde.rows(); }
  Index fields() const noexcept { return K_tilde.rows(); }
};

/// True iff K has no component along the creation operators (K Sigma^T = 0)
/// and R is recovered exactly from the Hermitian matrix 8 Sigma R Sigma^dag.
/// Both residuals are measured relative to the max-norms of K and R.
bool is_passive(const SlhSystem& sys, double tol = 1e-9);

/// Absolute residuals behind is_passive: |K Sigma^T|_max and
/// |R - Re{Sigma^dag (8 Sigma R Sigma^dag) Sigma}|_max.
struct PassivityResiduals {
  double creation = 0.0;
  double hamiltonian = 0.0;
};
PassivityResiduals passivity_residuals(const SlhSystem& sys);

/// Kt = 2 K Sigma^dag, Rt = 8 Sigma R Sigma^dag, c = trace(Rt) / 4.
/// Throws NotPassive.
PassiveForm to_passive_form(const SlhSystem& sys, double tol = 1e-9);

/// K = Kt Sigma, R = Re{Sigma^dag Rt Sigma}. Throws NonHermitianRtilde.
SlhSystem from_passive_form(const PassiveForm& pf, const CMatrix& scattering, Index n,
                            const Tolerances& tol = {});

}  // namespace lqss
