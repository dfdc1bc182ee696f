#include "cascade/verification.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "cascade/schur.hpp"

namespace lqss {

namespace {

double spectral_distance(const std::vector<Complex>& spectrum, Complex s) {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& l : spectrum) d = std::min(d, std::abs(s - l));
  return d;
}

CMatrix evaluate(const DoubledStateSpace& ss, Complex s) {
  const Index d = ss.A.rows();
  if (d == 0) return ss.Dd;
  const CMatrix pencil = s * complex_identity(d) - ss.A.cast<Complex>();
  const Eigen::PartialPivLU<CMatrix> lu(pencil);
  CMatrix value = ss.Cd * lu.solve(ss.B) + ss.Dd;
  if (!all_finite(value))
    throw Error(ErrorKind::ResolventSingular, "resolvent solve produced non-finite values");
  return value;
}

}  // namespace

TransferSample transfer_function(const DoubledStateSpace& ss, Complex s) {
  if (ss.A.rows() > 0) {
    const double scale = std::max(1.0, max_norm(ss.A));
    const double dist = spectral_distance(eigenvalues(ss.A), s);
    if (dist <= 1e-8 * scale)
      throw Error(ErrorKind::ResolventSingular,
                  "s is within " + std::to_string(dist) + " of an eigenvalue of A");
  }
  return {s, evaluate(ss, s)};
}

EquivalenceReport certify_equivalence(const SlhSystem& g, const SlhSystem& g2,
                                      std::size_t n_samples, double tol, std::uint64_t seed) {
  if (g.modes() != g2.modes() || g.fields() != g2.fields())
    throw Error(ErrorKind::DimensionMismatch, "systems differ in mode or field count");
  const double s_gap = max_norm(g.scattering() - g2.scattering());
  if (s_gap > tol)
    throw Error(ErrorKind::ScatteringMismatch,
                "|S - S'|_max = " + std::to_string(s_gap));

  const Tolerances loose{1.0, 1.0, 1.0};
  const DoubledStateSpace ss1 = build_state_space(g, loose);
  const DoubledStateSpace ss2 = build_state_space(g2, loose);
  const double scale = std::max({1.0, max_norm(ss1.A), max_norm(ss2.A)});
  std::vector<Complex> spectrum = eigenvalues(ss1.A);
  const std::vector<Complex> spectrum2 = eigenvalues(ss2.A);
  spectrum.insert(spectrum.end(), spectrum2.begin(), spectrum2.end());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.5 * scale, 2.0 * scale);
  std::uniform_real_distribution<double> im(-2.0 * scale, 2.0 * scale);

  EquivalenceReport report;
  report.tolerance = tol;
  report.seed = seed;
  // The D term is the s -> infinity value; include it as a sample at infinity.
  report.max_rel_mismatch = max_norm(ss1.Dd - ss2.Dd) / std::max(1.0, max_norm(ss1.Dd));
  std::size_t attempts = 0;
  while (report.samples_used < n_samples) {
    if (++attempts > 100 * (n_samples + 1))
      throw Error(ErrorKind::ResolventSingular, "could not draw sample points off the spectrum");
    const Complex s(re(rng), im(rng));
    if (spectral_distance(spectrum, s) <= 1e-6 * scale) continue;
    const CMatrix v1 = evaluate(ss1, s);
    const CMatrix v2 = evaluate(ss2, s);
    const double mismatch = max_norm(v1 - v2) / std::max(1.0, max_norm(v1));
    report.max_rel_mismatch = std::max(report.max_rel_mismatch, mismatch);
    ++report.samples_used;
  }
  report.verdict = report.max_rel_mismatch <= tol;
  return report;
}

double ccr_preservation(const RMatrix& v) {
  const RMatrix th = theta(v.rows() / 2);
  return max_norm(v * th * v.transpose() - th);
}

double orthogonality_residual(const RMatrix& v) {
  return max_norm(v * v.transpose() - real_identity(v.rows()));
}

bool certify_symplectic(const RMatrix& v, double tol) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0)
    throw Error(ErrorKind::OddDimension, "V must be square with even dimension, got " +
                                             std::to_string(v.rows()) + "x" +
                                             std::to_string(v.cols()));
  return ccr_preservation(v) <= tol;
}

}  // namespace lqss
