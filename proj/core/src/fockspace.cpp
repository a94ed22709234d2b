#include "spincat/fockspace.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spincat/errors.hpp"

namespace spincat {

namespace {

// L_k^(a)(x) by the three-term recurrence in k.
double laguerre(int k, int a, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + a - x;
  for (int n = 1; n < k; ++n) {
    const double next = ((2.0 * n + 1.0 + a - x) * cur - (n + a) * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void FockCutoff::validate() const {
  if (n_max < 0) throw InvalidArgument("FockCutoff: n_max must be nonnegative");
}

FockCutoff default_cutoff(int twice_j, double max_abs_displacement) {
  const int from_state = 2 * twice_j + 10;
  const int from_kernel =
      static_cast<int>(std::ceil(4.0 * max_abs_displacement * max_abs_displacement)) + 15;
  return {std::max(from_state, from_kernel)};
}

TwoModeOperator::TwoModeOperator(TwoModeSpace space, CMatrix entries)
    : space_(space), entries_(std::move(entries)) {
  space_.mode1.validate();
  space_.mode2.validate();
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
    throw InvalidArgument("TwoModeOperator: matrix dimension " +
                          std::to_string(entries_.rows()) + "x" +
                          std::to_string(entries_.cols()) + " does not match space dimension " +
                          std::to_string(space_.dim()));
  }
}

double TwoModeOperator::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

SupportBlock support_block(const TwoModeSpace& space, const CMatrix& m) {
  int top1 = -1;
  int top2 = -1;
  for (int r = 0; r < m.rows(); ++r) {
    const bool nonzero = (m.row(r).array() != Complex(0.0)).any() ||
                         (m.col(r).array() != Complex(0.0)).any();
    if (!nonzero) continue;
    top1 = std::max(top1, r / space.levels2());
    top2 = std::max(top2, r % space.levels2());
  }
  SupportBlock out;
  out.levels1 = std::max(top1, 0) + 1;
  out.levels2 = std::max(top2, 0) + 1;
  out.block.resize(out.dim(), out.dim());
  for (int a1 = 0; a1 < out.levels1; ++a1)
    for (int a2 = 0; a2 < out.levels2; ++a2)
      for (int b1 = 0; b1 < out.levels1; ++b1)
        for (int b2 = 0; b2 < out.levels2; ++b2)
          out.block(a1 * out.levels2 + a2, b1 * out.levels2 + b2) =
              m(space.index(a1, a2), space.index(b1, b2));
  return out;
}

CMatrix embed_support_block(const TwoModeSpace& space, const SupportBlock& b) {
  CMatrix m = CMatrix::Zero(space.dim(), space.dim());
  for (int a1 = 0; a1 < b.levels1; ++a1)
    for (int a2 = 0; a2 < b.levels2; ++a2)
      for (int b1 = 0; b1 < b.levels1; ++b1)
        for (int b2 = 0; b2 < b.levels2; ++b2)
          m(space.index(a1, a2), space.index(b1, b2)) =
              b.block(a1 * b.levels2 + a2, b1 * b.levels2 + b2);
  return m;
}

DensityMatrix::DensityMatrix(TwoModeSpace space, CMatrix entries, SupportBlock support)
    : space_(space), entries_(std::move(entries)), support_(std::move(support)) {}

DensityMatrix DensityMatrix::from_matrix(TwoModeSpace space, CMatrix entries) {
  TwoModeOperator op(space, std::move(entries));
  const double herm = op.hermiticity_defect();
  if (herm > 1e-12) {
    throw InvalidArgument("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const Complex tr = op.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw InvalidArgument("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  SupportBlock sb = support_block(space, op.matrix());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(sb.block, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("DensityMatrix: eigensolver failed");
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw InvalidArgument("DensityMatrix: negative eigenvalue " +
                          std::to_string(eig.eigenvalues().minCoeff()));
  }
  return DensityMatrix(space, op.matrix(), std::move(sb));
}

double DensityMatrix::purity() const {
  return (support_.block * support_.block).trace().real();
}

Complex displacement_element(Complex alpha, int row, int col) {
  const double x = std::norm(alpha);
  if (x == 0.0) return row == col ? Complex(1.0) : Complex(0.0);
  // <m|D(a)|n> for m >= n; the other triangle follows from
  // <m|D(a)|n> = conj(<n|D(-a)|m>).
  const bool lower = row >= col;
  const int k = lower ? col : row;
  const int order = std::abs(row - col);
  const Complex z = lower ? alpha : -std::conj(alpha);
  const double log_mag = 0.5 * (std::lgamma(k + 1.0) - std::lgamma(k + order + 1.0)) +
                         order * std::log(std::abs(z)) - 0.5 * x;
  const double phase = order * std::arg(z);
  const double mag = std::exp(log_mag) * laguerre(k, order, x);
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

CMatrix displacement_block(Complex alpha, int rows, int cols) {
  if (!finite(alpha)) throw InvalidArgument("displacement: non-finite amplitude");
  CMatrix d(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) d(r, c) = displacement_element(alpha, r, c);
  return d;
}

CMatrix displacement_matrix(Complex alpha, FockCutoff cutoff) {
  cutoff.validate();
  return displacement_block(alpha, cutoff.levels(), cutoff.levels());
}

Eigen::DiagonalMatrix<double, Eigen::Dynamic> parity_matrix(FockCutoff cutoff) {
  cutoff.validate();
  Eigen::VectorXd d(cutoff.levels());
  for (int n = 0; n < cutoff.levels(); ++n) d(n) = (n % 2 == 0) ? 1.0 : -1.0;
  return Eigen::DiagonalMatrix<double, Eigen::Dynamic>(d);
}

CMatrix displaced_parity_block(Complex alpha, int rows, int cols) {
  CMatrix d = displacement_block(2.0 * alpha, rows, cols);
  for (int c = 1; c < cols; c += 2) d.col(c) = -d.col(c);
  return d;
}

KernelFactor kernel_factor(Complex alpha, int cols, double tol) {
  constexpr int kMaxRows = 4096;
  constexpr int kTailRows = 16;
  // Entries underflow to zero at very large |alpha|, which leaves an empty
  // tail; a column that lost this much norm is never counted as resolved.
  constexpr double kMaxColumnLoss = 1e-9;
  const double g = 2.0 * std::abs(alpha);
  int rows = cols + static_cast<int>(std::ceil(g * g + 10.0 * g)) + 20;
  KernelFactor out;
  while (true) {
    rows = std::min(rows, kMaxRows);
    out.columns = displaced_parity_block(alpha, rows, cols);
    out.worst_column_loss = 0.0;
    out.worst_tail_mass = 0.0;
    for (int c = 0; c < cols; ++c) {
      out.worst_column_loss = std::max(out.worst_column_loss, 1.0 - out.columns.col(c).squaredNorm());
      out.worst_tail_mass =
          std::max(out.worst_tail_mass, out.columns.col(c).tail(kTailRows).squaredNorm());
    }
    out.resolved = out.worst_tail_mass <= tol && std::abs(out.worst_column_loss) <= kMaxColumnLoss;
    if (out.resolved || rows == kMaxRows) break;
    rows *= 2;
  }
  return out;
}

int resolved_levels(Complex alpha, FockCutoff cutoff, double tol) {
  const CMatrix d = displacement_block(alpha, cutoff.levels(), cutoff.levels());
  int n = 0;
  while (n < cutoff.levels() && 1.0 - d.col(n).squaredNorm() <= tol) ++n;
  return n;
}

TwoModeOperator displaced_parity_kernel(const PhasePoint& point, const TwoModeSpace& space) {
  if (!point.finite()) throw InvalidArgument("displaced_parity_kernel: non-finite phase point");
  const CMatrix a = displaced_parity_block(point.alpha, space.levels1(), space.levels1());
  const CMatrix b = displaced_parity_block(point.beta, space.levels2(), space.levels2());
  CMatrix k(space.dim(), space.dim());
  for (int a1 = 0; a1 < space.levels1(); ++a1)
    for (int b1 = 0; b1 < space.levels1(); ++b1)
      k.block(a1 * space.levels2(), b1 * space.levels2(), space.levels2(), space.levels2()) =
          a(a1, b1) * b;
  return {space, std::move(k)};
}

TwoModeOperator displaced_parity_kernel(const PhasePoint& point, FockCutoff cutoff) {
  return displaced_parity_kernel(point, TwoModeSpace::uniform(cutoff));
}

CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(m);
  if (eig.info() != Eigen::Success) throw NumericalError("psd_sqrt: eigensolver failed");
  Eigen::VectorXd ev = eig.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() < -kSqrtClamp) {
    throw NumericalError("psd_sqrt: eigenvalue " + std::to_string(ev.minCoeff()) +
                         " below clamp threshold; input is not a valid state");
  }
  // Eigenvalues below the solver's absolute accuracy are indistinguishable
  // from zero; their square roots would inject O(1e-8) noise.
  const double floor = static_cast<double>(ev.size()) * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, ev.size() > 0 ? ev.maxCoeff() : 0.0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) <= floor ? 0.0 : std::sqrt(ev(i));
  const CMatrix& v = eig.eigenvectors();
  CMatrix r = v * ev.asDiagonal() * v.adjoint();
  return 0.5 * (r + r.adjoint());
}

TwoModeOperator hermitian_sqrt(const DensityMatrix& rho) {
  SupportBlock root = rho.support();
  root.block = psd_sqrt(root.block);
  return {rho.space(), embed_support_block(rho.space(), root)};
}

CMatrix right_multiply_kron(const CMatrix& x, const CMatrix& a, const CMatrix& b) {
  const Eigen::Index d1 = a.rows();
  const Eigen::Index d2 = b.rows();
  const Eigen::Index n = d1 * d2;
  CMatrix y(x.rows(), n);
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor row(d1, d2);
  RowMajor res(d1, d2);
  const CMatrix at = a.transpose();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index i = 0; i < n; ++i) row(i / d2, i % d2) = x(r, i);
    res.noalias() = at * row * b;
    for (Eigen::Index i = 0; i < n; ++i) y(r, i) = res(i / d2, i % d2);
  }
  return y;
}

Complex trace_with_kron(const CMatrix& x, const CMatrix& a, const CMatrix& b) {
  // Tr[X (A kron B)] = sum_{p,q} X(p,q) A(q1,p1) B(q2,p2)
  const Eigen::Index d1 = a.rows();
  const Eigen::Index d2 = b.rows();
  Complex acc = 0.0;
  for (Eigen::Index p1 = 0; p1 < d1; ++p1)
    for (Eigen::Index q1 = 0; q1 < d1; ++q1) {
      const Complex aq = a(q1, p1);
      if (aq == Complex(0.0)) continue;
      // block X(p1*, q1*) is d2 x d2; Tr[Xblock * B]
      const auto xb = x.block(p1 * d2, q1 * d2, d2, d2);
      acc += aq * xb.cwiseProduct(b.transpose()).sum();
    }
  return acc;
}

}  // namespace spincat
