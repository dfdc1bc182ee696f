#include "cascade/passive_synthesis.hpp"

#include <string>

namespace lqss {

CMatrix mode_matrix(const PassiveForm& pf) {
  const Index n = pf.modes();
  const CMatrix sig = sigma(n);
  const CMatrix sts = sig * theta(n).cast<Complex>() * sig.adjoint();
  return 0.5 * sts * (pf.R_tilde - kI * pf.K_tilde.adjoint() * pf.K_tilde);
}

SchurLower schur_lower(const CMatrix& m) {
  const ComplexSchur upper = complex_schur(m);
  SchurLower out;
  out.U = upper.Q.adjoint().colwise().reverse();
  out.M_hat = upper.T.reverse();
  return out;
}

SymplecticTransform build_symplectic(const CMatrix& u, double tol) {
  if (u.rows() != u.cols())
    throw Error(ErrorKind::NonUnitaryInput, "U must be square");
  const double residual = max_norm(u.adjoint() * u - complex_identity(u.rows()));
  if (residual > tol)
    throw Error(ErrorKind::NonUnitaryInput, "|U^dag U - I|_max = " + std::to_string(residual));
  const CMatrix sig = sigma(u.rows());
  return {4.0 * (sig.adjoint() * u * sig).real()};
}

SlhSystem transform_system(const SlhSystem& sys, const SymplecticTransform& v) {
  const RMatrix& V = v.V;
  const Index dim = 2 * sys.modes();
  if (V.rows() != dim || V.cols() != dim)
    throw Error(ErrorKind::DimensionMismatch, "V must be " + std::to_string(dim) + "x" +
                                                  std::to_string(dim));
  CMatrix K = sys.coupling() * V.transpose().cast<Complex>();
  RMatrix R = V * sys.hamiltonian() * V.transpose();
  R = 0.5 * (R + R.transpose()).eval();
  return SlhSystem(sys.scattering(), std::move(K), std::move(R));
}

PassiveRealization passive_realize(const SlhSystem& sys, const PassiveOptions& opts) {
  const PassiveForm pf = to_passive_form(sys, opts.passivity_tol);
  SchurLower schur = schur_lower(mode_matrix(pf));
  SymplecticTransform transform = build_symplectic(schur.U, opts.orthogonality_tol);

  const Index two_n = transform.V.rows();
  const double orth = max_norm(transform.V * transform.V.transpose() - real_identity(two_n));
  if (orth > opts.orthogonality_tol)
    throw Error(ErrorKind::ConvergenceFailure,
                "V is not orthogonal: |V V^T - I|_max = " + std::to_string(orth));

  SlhSystem realized = transform_system(sys, transform);
  const TriangularityReport tri = is_cascade_realizable(realized, opts.triangular_tol);
  if (!tri.is_triangular)
    throw Error(ErrorKind::ConvergenceFailure,
                "transformed A is not block triangular: residual " +
                    std::to_string(tri.max_upper_residual));
  CascadeChain chain = decompose_cascade(realized, opts.triangular_tol);

  // Stage residuals are judged against the parent's scale: a nearly
  // uncoupled stage carries only rounding noise in K'_k.
  const double k_scale = max_norm(realized.coupling());
  const double r_scale = max_norm(realized.hamiltonian());
  bool stages_passive = true;
  for (const SlhSystem& stage : chain.stages) {
    const PassivityResiduals r = passivity_residuals(stage);
    stages_passive = stages_passive && r.creation <= opts.passivity_tol * k_scale &&
                     r.hamiltonian <= opts.passivity_tol * r_scale;
  }

  return PassiveRealization{std::move(realized), std::move(transform), std::move(chain),
                            std::move(schur), tri, stages_passive};
}

}  // namespace lqss
