#include "cascade/realizability.hpp"

#include <algorithm>
#include <sstream>

namespace lqss {

double strict_upper_block_norm(const RMatrix& f) {
  const Index n = f.rows() / 2;
  double worst = 0.0;
  for (Index j = 0; j < n; ++j)
    for (Index k = j + 1; k < n; ++k)
      worst = std::max(worst, max_norm(f.block(2 * j, 2 * k, 2, 2)));
  return worst;
}

TriangularityReport is_cascade_realizable(const SlhSystem& sys, double tol) {
  const Tolerances loose{1.0, 1.0, 1.0};  // sys is already validated
  const RMatrix A = build_state_space(sys, loose).A;
  TriangularityReport report;
  report.max_upper_residual = strict_upper_block_norm(A);
  report.tolerance_used = tol;
  report.scale = std::max(1.0, max_norm(A));
  report.is_triangular = report.max_upper_residual <= tol * report.scale;
  return report;
}

namespace {

std::string describe(const TriangularityReport& r) {
  std::ostringstream os;
  os << "A has strict upper 2x2 block residual " << r.max_upper_residual << " > "
     << r.tolerance_used << " * " << r.scale;
  return os.str();
}

}  // namespace

NotCascadeRealizableError::NotCascadeRealizableError(TriangularityReport report)
    : Error(ErrorKind::NotCascadeRealizable, describe(report)), report_(report) {}

CascadeChain decompose_cascade(const SlhSystem& sys, double tol) {
  const TriangularityReport report = is_cascade_realizable(sys, tol);
  if (!report.is_triangular) throw NotCascadeRealizableError(report);

  const Index n = sys.modes();
  const Index m = sys.fields();
  CascadeChain chain;
  chain.stages.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    CMatrix S = k == 0 ? sys.scattering() : complex_identity(m);
    chain.stages.emplace_back(std::move(S), sys.coupling_block(k), sys.hamiltonian_block(k, k));
  }
  return chain;
}

}  // namespace lqss
