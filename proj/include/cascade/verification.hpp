#pragma once

#include <cstdint>
#include <vector>

#include "cascade/core_model.hpp"
#include "cascade/passive_synthesis.hpp"

namespace lqss {

struct TransferSample {
  Complex s;
  CMatrix value;  // 2m x 2m
};

/// G(s) = Cd (sI - A)^{-1} B + Dd by partial-pivoted LU on sI - A.
/// Throws ResolventSingular when s lies within 1e-8 * max(1, |A|_max) of the
/// spectrum of A.
TransferSample transfer_function(const DoubledStateSpace& ss, Complex s);

struct EquivalenceReport {
  double max_rel_mismatch = 0.0;
  std::size_t samples_used = 0;
  bool verdict = false;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
};

/// Compares the doubled-up transfer functions of g and g2 at n_samples
/// random right-half-plane points s = sigma + i omega, sigma in
/// [0.5, 2] a, omega in [-2, 2] a with a = max(1, |A|_max), skipping points
/// within 1e-6 a of either spectrum. Per-sample mismatch is
/// |G(s) - G2(s)|_max / max(1, |G(s)|_max). Throws ScatteringMismatch when
/// S differs, DimensionMismatch when n or m differ.
EquivalenceReport certify_equivalence(const SlhSystem& g, const SlhSystem& g2,
                                      std::size_t n_samples = 20, double tol = 1e-8,
                                      std::uint64_t seed = 0);

/// |V Theta V^T - Theta|_max; the commutation-relation defect of z = V x.
double ccr_preservation(const RMatrix& v);
inline double ccr_preservation(const SymplecticTransform& t) { return ccr_preservation(t.V); }

/// |V V^T - I|_max.
double orthogonality_residual(const RMatrix& v);

/// ccr_preservation(v) <= tol. Throws OddDimension for odd or non-square v.
bool certify_symplectic(const RMatrix& v, double tol = 1e-9);

}  // namespace lqss
