#include "cascade/core_model.hpp"

#include <sstream>

namespace lqss {

namespace {

std::string shape(Index r, Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

}  // namespace

SlhSystem::SlhSystem(CMatrix scattering, CMatrix coupling, RMatrix hamiltonian,
                     const Tolerances& tol)
    : scattering_(std::move(scattering)),
      coupling_(std::move(coupling)),
      hamiltonian_(std::move(hamiltonian)) {
  const Index m = scattering_.rows();
  if (scattering_.cols() != m)
    throw Error(ErrorKind::DimensionMismatch,
                "scattering matrix must be square, got " + shape(m, scattering_.cols()));
  if (hamiltonian_.rows() != hamiltonian_.cols() || hamiltonian_.rows() % 2 != 0)
    throw Error(ErrorKind::DimensionMismatch,
                "R must be 2n x 2n, got " + shape(hamiltonian_.rows(), hamiltonian_.cols()));
  const Index two_n = hamiltonian_.rows();
  if (coupling_.rows() != m || coupling_.cols() != two_n)
    throw Error(ErrorKind::DimensionMismatch, "K must be " + shape(m, two_n) + ", got " +
                                                  shape(coupling_.rows(), coupling_.cols()));
  if (!all_finite(scattering_) || !all_finite(coupling_) || !all_finite(hamiltonian_))
    throw Error(ErrorKind::NonFinite, "system matrices contain NaN or Inf");

  const double unitary_residual =
      max_norm(scattering_.adjoint() * scattering_ - complex_identity(m));
  if (unitary_residual > tol.unitary)
    throw Error(ErrorKind::NonUnitaryScattering,
                "|S^dag S - I|_max = " + std::to_string(unitary_residual));
  const double sym_residual = max_norm(hamiltonian_ - hamiltonian_.transpose());
  if (sym_residual > tol.symmetric)
    throw Error(ErrorKind::NonSymmetricR, "|R - R^T|_max = " + std::to_string(sym_residual));
}

SlhSystem SlhSystem::identity(Index fields) {
  return SlhSystem(complex_identity(fields), CMatrix(fields, 0), RMatrix(0, 0));
}

RMatrix symplectic_unit() {
  RMatrix j(2, 2);
  j << 0.0, 1.0, -1.0, 0.0;
  return j;
}

RMatrix theta(Index n) {
  RMatrix t = RMatrix::Zero(2 * n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    t(2 * j, 2 * j + 1) = 1.0;
    t(2 * j + 1, 2 * j) = -1.0;
  }
  return t;
}

CMatrix sigma(Index n) {
  CMatrix s = CMatrix::Zero(n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    s(j, 2 * j) = Complex(0.5, 0.0);
    s(j, 2 * j + 1) = Complex(0.0, 0.5);
  }
  return s;
}

StructuralConstants::StructuralConstants(Index modes)
    : n(modes), J(symplectic_unit()), Theta(theta(modes)), Sigma(sigma(modes)) {}

DoubledStateSpace build_state_space(const SlhSystem& sys, const Tolerances& tol) {
  const Index n = sys.modes();
  const Index m = sys.fields();
  const CMatrix& S = sys.scattering();
  const CMatrix& K = sys.coupling();
  const RMatrix& R = sys.hamiltonian();

  const double unitary_residual = max_norm(S.adjoint() * S - complex_identity(m));
  if (unitary_residual > tol.unitary)
    throw Error(ErrorKind::NonUnitaryScattering,
                "|S^dag S - I|_max = " + std::to_string(unitary_residual));
  const double sym_residual = max_norm(R - R.transpose());
  if (sym_residual > tol.symmetric)
    throw Error(ErrorKind::NonSymmetricR, "|R - R^T|_max = " + std::to_string(sym_residual));

  const CMatrix theta_c = theta(n).cast<Complex>();
  const CMatrix gram = K.adjoint() * K;
  // Im{X} = (X - X^#) / 2i, evaluated in complex arithmetic so that the
  // discarded imaginary residue can be checked.
  const CMatrix im_gram = (gram - gram.conjugate()) / (2.0 * kI);
  const CMatrix a_complex = 2.0 * theta_c * (R.cast<Complex>() + im_gram);
  const double residue = max_norm(a_complex.imag());
  if (residue > tol.build)
    throw Error(ErrorKind::NonFinite, "A has imaginary residue " + std::to_string(residue));

  DoubledStateSpace ss;
  ss.A = a_complex.real();
  ss.B.resize(2 * n, 2 * m);
  ss.B << -K.adjoint() * S, K.transpose() * S.conjugate();
  ss.B = (2.0 * kI) * theta_c * ss.B;
  ss.Cd.resize(2 * m, 2 * n);
  ss.Cd << K, K.conjugate();
  ss.Dd = CMatrix::Zero(2 * m, 2 * m);
  ss.Dd.topLeftCorner(m, m) = S;
  ss.Dd.bottomRightCorner(m, m) = S.conjugate();
  return ss;
}

PassivityResiduals passivity_residuals(const SlhSystem& sys) {
  const CMatrix sig = sigma(sys.modes());
  const RMatrix& R = sys.hamiltonian();
  const CMatrix r_tilde = 8.0 * sig * R.cast<Complex>() * sig.adjoint();
  const RMatrix rebuilt = (sig.adjoint() * r_tilde * sig).real();
  return {max_norm(sys.coupling() * sig.transpose()), max_norm(R - rebuilt)};
}

bool is_passive(const SlhSystem& sys, double tol) {
  const PassivityResiduals r = passivity_residuals(sys);
  return r.creation <= tol * max_norm(sys.coupling()) &&
         r.hamiltonian <= tol * max_norm(sys.hamiltonian());
}

PassiveForm to_passive_form(const SlhSystem& sys, double tol) {
  if (!is_passive(sys, tol))
    throw Error(ErrorKind::NotPassive,
                "coupling or Hamiltonian involves creation operators independently");
  const CMatrix sig = sigma(sys.modes());
  PassiveForm pf;
  pf.K_tilde = 2.0 * sys.coupling() * sig.adjoint();
  pf.R_tilde = 8.0 * sig * sys.hamiltonian().cast<Complex>() * sig.adjoint();
  pf.offset = 0.25 * pf.R_tilde.trace().real();
  return pf;
}

SlhSystem from_passive_form(const PassiveForm& pf, const CMatrix& scattering, Index n,
                            const Tolerances& tol) {
  if (pf.R_tilde.rows() != n || pf.R_tilde.cols() != n)
    throw Error(ErrorKind::DimensionMismatch,
                "R_tilde must be " + shape(n, n) + ", got " +
                    shape(pf.R_tilde.rows(), pf.R_tilde.cols()));
  if (pf.K_tilde.cols() != n || pf.K_tilde.rows() != scattering.rows())
    throw Error(ErrorKind::DimensionMismatch,
                "K_tilde must be " + shape(scattering.rows(), n) + ", got " +
                    shape(pf.K_tilde.rows(), pf.K_tilde.cols()));
  const double herm_residual = max_norm(pf.R_tilde - pf.R_tilde.adjoint());
  if (herm_residual > tol.symmetric)
    throw Error(ErrorKind::NonHermitianRtilde,
                "|R_tilde - R_tilde^dag|_max = " + std::to_string(herm_residual));
  const CMatrix sig = sigma(n);
  CMatrix K = pf.K_tilde * sig;
  RMatrix R = (sig.adjoint() * pf.R_tilde * sig).real();
  return SlhSystem(scattering, std::move(K), std::move(R), tol);
}

}  // namespace lqss
