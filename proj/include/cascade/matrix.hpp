#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lqss {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense row-major complex matrix. All system matrices are small (n, m at
/// most a few dozen), so no sparse or blocked storage is provided.
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr Complex kI{0.0, 1.0};

/// Largest absolute entry; zero for an empty matrix.
template <typename Derived>
double max_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const auto v = m(i, j);
      if constexpr (std::is_same_v<typename Derived::Scalar, Complex>) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
      } else {
        if (!std::isfinite(v)) return false;
      }
    }
  return true;
}

inline CMatrix complex_identity(Index n) { return CMatrix::Identity(n, n); }
inline RMatrix real_identity(Index n) { return RMatrix::Identity(n, n); }

/// Entrywise imaginary part of a complex matrix, i.e. (X - X^#) / 2i.
inline RMatrix imag_part(const CMatrix& x) { return x.imag(); }
inline RMatrix real_part(const CMatrix& x) { return x.real(); }

}  // namespace lqss
