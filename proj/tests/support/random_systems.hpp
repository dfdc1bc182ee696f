#pragma once

#include <random>
#include <vector>

#include <Eigen/QR>

#include "cascade/composition.hpp"
#include "cascade/core_model.hpp"

namespace lqss::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Index uniform_int(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline CMatrix random_complex(Rng& rng, Index rows, Index cols, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline RMatrix random_real(Rng& rng, Index rows, Index cols, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  RMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

inline RMatrix random_symmetric(Rng& rng, Index n, double scale = 1.0) {
  const RMatrix a = random_real(rng, n, n, scale);
  return 0.5 * (a + a.transpose());
}

inline CMatrix random_hermitian(Rng& rng, Index n, double scale = 1.0) {
  const CMatrix a = random_complex(rng, n, n, scale);
  return 0.5 * (a + a.adjoint());
}

/// Haar-like unitary from the QR factorization of a complex Gaussian matrix.
inline CMatrix random_unitary(Rng& rng, Index n) {
  if (n == 0) return CMatrix(0, 0);
  const CMatrix g = random_complex(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline SlhSystem random_system(Rng& rng, Index n, Index m, double scale = 1.0) {
  return SlhSystem(random_unitary(rng, m), random_complex(rng, m, 2 * n, scale),
                   random_symmetric(rng, 2 * n, scale));
}

inline SlhSystem random_stage(Rng& rng, Index m, double scale = 1.0) {
  return random_system(rng, 1, m, scale);
}

inline CascadeChain random_chain(Rng& rng, Index n, Index m, double scale = 1.0) {
  CascadeChain chain;
  for (Index k = 0; k < n; ++k) chain.stages.push_back(random_stage(rng, m, scale));
  return chain;
}

inline PassiveForm random_passive_form(Rng& rng, Index n, Index m, double scale = 1.0) {
  PassiveForm pf;
  pf.R_tilde = random_hermitian(rng, n, scale);
  pf.K_tilde = random_complex(rng, m, n, scale);
  pf.offset = 0.25 * pf.R_tilde.trace().real();
  return pf;
}

/// Passive form whose R_tilde has repeated eigenvalues. When m >= n the
/// coupling shares the eigenbasis, so M itself has a repeated eigenvalue.
inline PassiveForm degenerate_passive_form(Rng& rng, Index n, Index m) {
  const CMatrix w = random_unitary(rng, n);
  std::vector<double> r(static_cast<std::size_t>(n)), d(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    r[static_cast<std::size_t>(j)] = uniform(rng, -3.0, 3.0);
    d[static_cast<std::size_t>(j)] = uniform(rng, 0.1, 2.0);
  }
  // Repeat the first eigenpair across roughly half the modes.
  for (Index j = 1; j <= n / 2; ++j) {
    r[static_cast<std::size_t>(j)] = r[0];
    d[static_cast<std::size_t>(j)] = d[0];
  }
  CMatrix rd = CMatrix::Zero(n, n), sd = CMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    rd(j, j) = r[static_cast<std::size_t>(j)];
    sd(j, j) = std::sqrt(d[static_cast<std::size_t>(j)]);
  }
  PassiveForm pf;
  pf.R_tilde = w * rd * w.adjoint();
  pf.R_tilde = 0.5 * (pf.R_tilde + pf.R_tilde.adjoint()).eval();
  if (m >= n) {
    // Isometry Y (m x n) so that Kt^dag Kt = W diag(d) W^dag.
    const CMatrix y = random_unitary(rng, m).leftCols(n);
    pf.K_tilde = y * sd * w.adjoint();
  } else {
    pf.K_tilde = random_complex(rng, m, n);
  }
  pf.offset = 0.25 * pf.R_tilde.trace().real();
  return pf;
}

inline SlhSystem random_passive_system(Rng& rng, Index n, Index m, double scale = 1.0) {
  return from_passive_form(random_passive_form(rng, n, m, scale), random_unitary(rng, m), n);
}

}  // namespace lqss::testing
