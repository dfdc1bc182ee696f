#include "cascade/composition.hpp"

#include <string>

namespace lqss {

void CascadeChain::validate() const {
  if (stages.empty()) throw Error(ErrorKind::DimensionMismatch, "cascade chain has no stages");
  const Index m = stages.front().fields();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (stages[i].modes() != 1)
      throw Error(ErrorKind::DimensionMismatch,
                  "stage " + std::to_string(i + 1) + " has " +
                      std::to_string(stages[i].modes()) + " modes, expected 1");
    if (stages[i].fields() != m)
      throw Error(ErrorKind::FieldCountMismatch,
                  "stage " + std::to_string(i + 1) + " has " +
                      std::to_string(stages[i].fields()) + " fields, expected " +
                      std::to_string(m));
  }
  if (!residual_R) return;
  const RMatrix& rd = *residual_R;
  const Index n = modes();
  if (rd.rows() != 2 * n || rd.cols() != 2 * n)
    throw Error(ErrorKind::BadResidual, "residual_R must be " + std::to_string(2 * n) +
                                            " x " + std::to_string(2 * n));
  if (!all_finite(rd)) throw Error(ErrorKind::BadResidual, "residual_R is not finite");
  if (max_norm(rd - rd.transpose()) > 1e-9)
    throw Error(ErrorKind::BadResidual, "residual_R is not symmetric");
  for (Index j = 0; j < n; ++j)
    if (rd.block(2 * j, 2 * j, 2, 2).cwiseAbs().maxCoeff() != 0.0)
      throw Error(ErrorKind::BadResidual,
                  "residual_R diagonal block " + std::to_string(j + 1) + " is nonzero");
}

SlhSystem concatenation(const SlhSystem& g1, const SlhSystem& g2) {
  const Index m1 = g1.fields(), m2 = g2.fields();
  const Index d1 = 2 * g1.modes(), d2 = 2 * g2.modes();

  CMatrix S = CMatrix::Zero(m1 + m2, m1 + m2);
  S.topLeftCorner(m1, m1) = g1.scattering();
  S.bottomRightCorner(m2, m2) = g2.scattering();
  CMatrix K = CMatrix::Zero(m1 + m2, d1 + d2);
  K.topLeftCorner(m1, d1) = g1.coupling();
  K.bottomRightCorner(m2, d2) = g2.coupling();
  RMatrix R = RMatrix::Zero(d1 + d2, d1 + d2);
  R.topLeftCorner(d1, d1) = g1.hamiltonian();
  R.bottomRightCorner(d2, d2) = g2.hamiltonian();
  return SlhSystem(std::move(S), std::move(K), std::move(R));
}

SlhSystem series(const SlhSystem& g2, const SlhSystem& g1) {
  if (g1.fields() != g2.fields())
    throw Error(ErrorKind::FieldCountMismatch,
                "series product needs equal field counts, got " +
                    std::to_string(g1.fields()) + " and " + std::to_string(g2.fields()));
  const Index m = g1.fields();
  const Index d1 = 2 * g1.modes(), d2 = 2 * g2.modes();
  const CMatrix& S2 = g2.scattering();

  CMatrix K(m, d1 + d2);
  K << S2 * g1.coupling(), g2.coupling();
  const RMatrix coupling_block = imag_part(g2.coupling().adjoint() * S2 * g1.coupling());
  RMatrix R(d1 + d2, d1 + d2);
  R.topLeftCorner(d1, d1) = g1.hamiltonian();
  R.bottomRightCorner(d2, d2) = g2.hamiltonian();
  R.bottomLeftCorner(d2, d1) = coupling_block;
  R.topRightCorner(d1, d2) = coupling_block.transpose();
  return SlhSystem(S2 * g1.scattering(), std::move(K), std::move(R));
}

SlhSystem cascade(const CascadeChain& chain) {
  chain.validate();
  const Index n = chain.modes();
  const Index m = chain.stages.front().fields();
  const auto& st = chain.stages;

  // after[j] = S_{n <- j+1}, the scattering seen downstream of stage j.
  std::vector<CMatrix> after(static_cast<std::size_t>(n));
  CMatrix acc = complex_identity(m);
  for (Index j = n - 1; j >= 0; --j) {
    after[static_cast<std::size_t>(j)] = acc;
    acc = acc * st[static_cast<std::size_t>(j)].scattering();
  }
  CMatrix S = acc;

  CMatrix K(m, 2 * n);
  RMatrix R = RMatrix::Zero(2 * n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    const SlhSystem& gj = st[static_cast<std::size_t>(j)];
    K.middleCols(2 * j, 2) = after[static_cast<std::size_t>(j)] * gj.coupling();
    R.block(2 * j, 2 * j, 2, 2) = gj.hamiltonian();
  }
  for (Index k = 0; k < n; ++k) {
    const CMatrix& Kk = st[static_cast<std::size_t>(k)].coupling();
    CMatrix between = complex_identity(m);  // S_{j <- k+1}
    for (Index j = k + 1; j < n; ++j) {
      const SlhSystem& gj = st[static_cast<std::size_t>(j)];
      between = gj.scattering() * between;
      const RMatrix block = imag_part(gj.coupling().adjoint() * between * Kk);
      R.block(2 * j, 2 * k, 2, 2) = block;
      R.block(2 * k, 2 * j, 2, 2) = block.transpose();
    }
  }
  if (chain.residual_R) R += *chain.residual_R;
  return SlhSystem(std::move(S), std::move(K), std::move(R));
}

RMatrix residual_interaction(const SlhSystem& sys) {
  const Index n = sys.modes();
  RMatrix rd = RMatrix::Zero(2 * n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    const CMatrix Kj = sys.coupling_block(j);
    for (Index k = j + 1; k < n; ++k) {
      const RMatrix gram = imag_part(sys.coupling_block(k).adjoint() * Kj);
      const RMatrix block = sys.hamiltonian_block(j, k) - gram.transpose();
      rd.block(2 * j, 2 * k, 2, 2) = block;
      rd.block(2 * k, 2 * j, 2, 2) = block.transpose();
    }
  }
  return rd;
}

}  // namespace lqss
