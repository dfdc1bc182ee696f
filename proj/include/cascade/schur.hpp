#pragma once

#include "cascade/errors.hpp"
#include "cascade/matrix.hpp"

namespace lqss {

/// Upper-triangular complex Schur form M = Q T Q^dag.
struct ComplexSchur {
  CMatrix Q;  // unitary
  CMatrix T;  // upper triangular
};

/// Householder reduction to Hessenberg form followed by single-shift QR
/// sweeps with Wilkinson shifts. Each eigenvalue gets at most 30n sweeps
/// before ConvergenceFailure is thrown.
ComplexSchur complex_schur(const CMatrix& m);

/// Eigenvalues of a real or complex square matrix, read off the Schur form.
std::vector<Complex> eigenvalues(const CMatrix& m);
std::vector<Complex> eigenvalues(const RMatrix& m);

}  // namespace lqss
