#include "cascade/schur.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lqss {

namespace {

constexpr double kDeflation = 1e-13;
constexpr int kSweepsPerRow = 30;

// Reduces t to upper Hessenberg form in place, accumulating the reflectors
// into q so that the original matrix equals q t q^dag.
void hessenberg(CMatrix& t, CMatrix& q) {
  const Index n = t.rows();
  for (Index k = 0; k + 2 < n; ++k) {
    const Index len = n - k - 1;
    Eigen::Matrix<Complex, Eigen::Dynamic, 1> v = t.block(k + 1, k, len, 1);
    const double tail = v.tail(len - 1).norm();
    if (tail == 0.0) continue;
    const double xnorm = v.norm();
    const Complex phase = std::abs(v(0)) == 0.0 ? Complex(1.0) : v(0) / std::abs(v(0));
    v(0) += phase * xnorm;
    v /= v.norm();

    // t <- H t H with H = I - 2 v v^dag acting on rows/cols k+1..n-1.
    auto rows = t.bottomRows(len);
    const Eigen::Matrix<Complex, 1, Eigen::Dynamic> vr = v.adjoint() * rows;
    rows.noalias() -= 2.0 * v * vr;
    auto cols = t.rightCols(len);
    const Eigen::Matrix<Complex, Eigen::Dynamic, 1> cv = cols * v;
    cols.noalias() -= 2.0 * cv * v.adjoint();
    auto qcols = q.rightCols(len);
    const Eigen::Matrix<Complex, Eigen::Dynamic, 1> qv = qcols * v;
    qcols.noalias() -= 2.0 * qv * v.adjoint();

    t.block(k + 2, k, len - 1, 1).setZero();
  }
}

struct Givens {
  double c;
  Complex s;
};

// G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
Givens make_givens(Complex a, Complex b) {
  const double abs_a = std::abs(a);
  const double abs_b = std::abs(b);
  if (abs_b == 0.0) return {1.0, Complex(0.0)};
  if (abs_a == 0.0) return {0.0, std::conj(b) / abs_b};
  const double rho = std::hypot(abs_a, abs_b);
  return {abs_a / rho, (a / abs_a) * std::conj(b) / rho};
}

void rotate_rows(CMatrix& t, Index k, const Givens& g, Index col_begin, Index col_end) {
  for (Index j = col_begin; j < col_end; ++j) {
    const Complex x = t(k, j), y = t(k + 1, j);
    t(k, j) = g.c * x + g.s * y;
    t(k + 1, j) = -std::conj(g.s) * x + g.c * y;
  }
}

// Right-multiplies columns k, k+1 by G^dag.
void rotate_cols(CMatrix& t, Index k, const Givens& g, Index row_begin, Index row_end) {
  for (Index i = row_begin; i < row_end; ++i) {
    const Complex x = t(i, k), y = t(i, k + 1);
    t(i, k) = g.c * x + std::conj(g.s) * y;
    t(i, k + 1) = -g.s * x + g.c * y;
  }
}

// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
Complex wilkinson_shift(const CMatrix& t, Index iu) {
  Complex a = t(iu - 1, iu - 1), b = t(iu - 1, iu), c = t(iu, iu - 1), d = t(iu, iu);
  const double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
  if (scale == 0.0) return Complex(0.0);
  a /= scale, b /= scale, c /= scale, d /= scale;
  const Complex half_gap = 0.5 * (a - d);
  const Complex disc = std::sqrt(half_gap * half_gap + b * c);
  const Complex mid = 0.5 * (a + d);
  const Complex l1 = mid + disc, l2 = mid - disc;
  return scale * (std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2);
}

}  // namespace

ComplexSchur complex_schur(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, "Schur decomposition needs a square matrix");
  if (!all_finite(m)) throw Error(ErrorKind::NonFinite, "Schur input is not finite");

  const Index n = m.rows();
  ComplexSchur out{complex_identity(n), m};
  CMatrix& t = out.T;
  CMatrix& q = out.Q;
  if (n <= 1) return out;

  hessenberg(t, q);
  const double norm = max_norm(t);
  const double tiny = std::numeric_limits<double>::epsilon() * norm;

  Index iu = n - 1;
  int sweeps = 0;
  const int budget = kSweepsPerRow * static_cast<int>(n);
  while (iu > 0) {
    for (Index k = iu; k > 0; --k) {
      const double sub = std::abs(t(k, k - 1));
      if (sub <= kDeflation * (std::abs(t(k - 1, k - 1)) + std::abs(t(k, k))) || sub <= tiny)
        t(k, k - 1) = Complex(0.0);
    }
    if (t(iu, iu - 1) == Complex(0.0)) {
      --iu;
      sweeps = 0;
      continue;
    }
    Index il = iu - 1;
    while (il > 0 && t(il, il - 1) != Complex(0.0)) --il;

    if (++sweeps > budget)
      throw Error(ErrorKind::ConvergenceFailure,
                  "QR iteration did not converge within " + std::to_string(budget) +
                      " sweeps for eigenvalue " + std::to_string(iu + 1));

    Complex shift;
    if (sweeps % 10 == 0) {
      // Exceptional shift to break cycles.
      shift = Complex(std::abs(t(iu, iu - 1).real()) +
                      (iu >= 2 ? std::abs(t(iu - 1, iu - 2).real()) : 0.0));
    } else {
      shift = wilkinson_shift(t, iu);
    }

    Complex x = t(il, il) - shift;
    Complex y = t(il + 1, il);
    for (Index k = il; k < iu; ++k) {
      const Givens g = make_givens(x, y);
      rotate_rows(t, k, g, k > il ? k - 1 : il, n);
      rotate_cols(t, k, g, 0, std::min(k + 3, iu + 1));
      rotate_cols(q, k, g, 0, n);
      if (k > il) t(k + 1, k - 1) = Complex(0.0);
      if (k + 1 < iu) {
        x = t(k + 1, k);
        y = t(k + 2, k);
      }
    }
  }
  for (Index i = 1; i < n; ++i)
    for (Index j = 0; j < i; ++j) t(i, j) = Complex(0.0);
  return out;
}

std::vector<Complex> eigenvalues(const CMatrix& m) {
  const ComplexSchur s = complex_schur(m);
  std::vector<Complex> out(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = s.T(i, i);
  return out;
}

std::vector<Complex> eigenvalues(const RMatrix& m) { return eigenvalues(CMatrix(m.cast<Complex>())); }

}  // namespace lqss
