#pragma once

#include <Eigen/Dense>
#include <complex>

#include "spincat/phase_point.hpp"

namespace spincat {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Single-mode truncation: Fock levels 0..n_max inclusive.
struct FockCutoff {
  int n_max = 0;

  int levels() const { return n_max + 1; }
  void validate() const;
  friend bool operator==(FockCutoff, FockCutoff) = default;
};

/// Default truncation for a spin-j state probed at displacements up to
/// max_abs_displacement: max(2*ceil(2j) + 10, ceil(4 |alpha|^2) + 15).
FockCutoff default_cutoff(int twice_j, double max_abs_displacement);

/// Truncated two-mode space. The basis vector |n1, n2> sits at index
/// n1 * mode2.levels() + n2 (mode 1 major). Every module uses this layout.
struct TwoModeSpace {
  FockCutoff mode1;
  FockCutoff mode2;

  static TwoModeSpace uniform(FockCutoff c) { return {c, c}; }

  int levels1() const { return mode1.levels(); }
  int levels2() const { return mode2.levels(); }
  int dim() const { return levels1() * levels2(); }
  int index(int n1, int n2) const { return n1 * levels2() + n2; }
  friend bool operator==(const TwoModeSpace&, const TwoModeSpace&) = default;
};

/// Dense operator on a truncated two-mode space.
class TwoModeOperator {
 public:
  TwoModeOperator(TwoModeSpace space, CMatrix entries);

  const TwoModeSpace& space() const { return space_; }
  const CMatrix& matrix() const { return entries_; }
  Complex trace() const { return entries_.trace(); }

  /// max |A - A^dagger| over all entries.
  double hermiticity_defect() const;

 private:
  TwoModeSpace space_;
  CMatrix entries_;
};

/// Smallest top-left block of a two-mode operator that contains every nonzero
/// entry, re-indexed with the same mode-1-major layout over
/// levels1 x levels2.
struct SupportBlock {
  int levels1 = 0;
  int levels2 = 0;
  CMatrix block;

  int dim() const { return levels1 * levels2; }
};

SupportBlock support_block(const TwoModeSpace& space, const CMatrix& m);
CMatrix embed_support_block(const TwoModeSpace& space, const SupportBlock& b);

/// A two-mode density matrix. Construction checks Hermiticity (1e-12),
/// unit trace (1e-10) and positive semidefiniteness (eigenvalues >= -1e-10).
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(TwoModeSpace space, CMatrix entries);

  const TwoModeSpace& space() const { return space_; }
  const CMatrix& matrix() const { return entries_; }
  const SupportBlock& support() const { return support_; }

  double purity() const;
  TwoModeOperator as_operator() const { return {space_, entries_}; }

 private:
  DensityMatrix(TwoModeSpace space, CMatrix entries, SupportBlock support);

  TwoModeSpace space_;
  CMatrix entries_;
  SupportBlock support_;
};

/// <row| D(alpha) |col> for the untruncated displacement operator,
/// D(alpha) = exp(alpha a^dagger - conj(alpha) a). Associated-Laguerre closed
/// form with the polynomial evaluated by its three-term recurrence.
Complex displacement_element(Complex alpha, int row, int col);

/// rows x cols block of D(alpha) in the Fock basis.
CMatrix displacement_block(Complex alpha, int rows, int cols);

/// Square truncation of D(alpha). Rejects non-finite alpha.
CMatrix displacement_matrix(Complex alpha, FockCutoff cutoff);

/// diag((-1)^n), n = 0..n_max.
Eigen::DiagonalMatrix<double, Eigen::Dynamic> parity_matrix(FockCutoff cutoff);

/// rows x cols block of the single-mode displaced parity operator
/// D(alpha) Pi D(alpha)^dagger. Uses D(alpha) Pi D(alpha)^dagger = D(2 alpha) Pi,
/// so every entry is exact (no truncated matrix products involved).
CMatrix displaced_parity_block(Complex alpha, int rows, int cols);

/// Columns 0..cols-1 of the single-mode displaced parity operator, with the
/// number of rows grown until the mass in the trailing rows of every column
/// is below `tol`. The rows start past the peak of each column, so the
/// discarded tail is smaller than that trailing mass. Columns whose norm is
/// off by more than 1e-9 (underflow at very large |alpha|) are unresolved.
/// Since the operator is a Hermitian involution, columns^dagger * columns is
/// the (cols x cols) block of its square computed over the resolved rows.
struct KernelFactor {
  CMatrix columns;
  double worst_column_loss = 0.0;  // max over columns of 1 - |column|^2
  double worst_tail_mass = 0.0;    // max over columns of the trailing-row mass
  bool resolved = true;
};

KernelFactor kernel_factor(Complex alpha, int cols, double tol = 1e-13);

/// Number of leading columns of the truncated D(alpha) whose norm deficit
/// 1 - |column|^2 is at most `tol`: the block on which truncated products of
/// displacement matrices behave like the untruncated operators. By
/// Cauchy-Schwarz, entries of such products on this block differ from the
/// exact ones by at most `tol`.
int resolved_levels(Complex alpha, FockCutoff cutoff, double tol = 1e-10);

/// Two-mode kernel Delta(alpha) (x) Delta(beta) compressed to `space`.
TwoModeOperator displaced_parity_kernel(const PhasePoint& point, const TwoModeSpace& space);
TwoModeOperator displaced_parity_kernel(const PhasePoint& point, FockCutoff cutoff);

/// Eigenvalue clamp for square roots: eigenvalues in [-kSqrtClamp, 0) are
/// set to zero, anything more negative is an error.
inline constexpr double kSqrtClamp = 1e-8;

/// Principal square root of a Hermitian PSD matrix via eigendecomposition.
/// Eigenvalues at or below dim * eps * max(1, lambda_max) are treated as zero.
CMatrix psd_sqrt(const CMatrix& m);

/// Principal square root of a density matrix; Hermitian PSD, squares back to rho.
TwoModeOperator hermitian_sqrt(const DensityMatrix& rho);

/// X * (A kron B) for X of size (d1 d2) x (d1 d2), A d1 x d1, B d2 x d2,
/// using the mode-1-major index layout. Cost O((d1 d2)^2 (d1 + d2)).
CMatrix right_multiply_kron(const CMatrix& x, const CMatrix& a, const CMatrix& b);

/// Tr[X (A kron B)] in O((d1 d2)^2).
Complex trace_with_kron(const CMatrix& x, const CMatrix& a, const CMatrix& b);

}  // namespace spincat
