#pragma once

#include <cstdint>
#include <vector>

#include "spincat/fockspace.hpp"
#include "spincat/grid.hpp"

namespace spincat {

struct SymmetryRecord {
  PhasePoint point;
  double w = 0.0;          // kernel-mean Wigner value
  double w_squared = 0.0;
  double skew = 0.0;
  double budget = 0.0;     // skew + w_squared
};

/// Skew values in [-kSkewClamp, 0) are reported as zero; more negative ones
/// mean the truncation is inadequate.
inline constexpr double kSkewClamp = 1e-9;

/// Tolerance of the commutator audit on the pure-state fast path.
inline constexpr double kAuditTolerance = 1e-7;

/// Evaluates W, Var and I for one density matrix at many points. The square
/// root of rho is computed once at construction and shared read-only, so
/// evaluate() may be called concurrently.
///
/// Everything is restricted to the support block S of rho. The kernel is
/// exact there; Delta^2 compressed to S is built from kernel columns with
/// enough rows that each column's norm is resolved to 1e-13.
class SkewEvaluator {
 public:
  explicit SkewEvaluator(const DensityMatrix& rho);

  double wigner(const PhasePoint& p) const;
  /// Tr[rho Delta^2] - W^2
  double variance(const PhasePoint& p) const;
  /// Tr[rho Delta^2] - Tr[sqrt(rho) Delta sqrt(rho) Delta]; sets *clamped
  /// when a small negative value was clamped to zero.
  double skew(const PhasePoint& p, bool* clamped = nullptr) const;
  SymmetryRecord evaluate(const PhasePoint& p, bool* clamped = nullptr) const;

 private:
  double delta_squared_mean(const PhasePoint& p) const;

  SupportBlock rho_;
  CMatrix root_;
};

double parity_variance(const DensityMatrix& rho, const PhasePoint& point);
double skew_information(const DensityMatrix& rho, const PhasePoint& point);

struct SymmetrySweep {
  std::vector<SymmetryRecord> records;
  std::size_t clamped = 0;
  std::vector<std::size_t> audited;  // grid indices checked against the commutator
};

/// One record per grid point in grid order. With pure_hint the skew is
/// 1 - W^2 and five random points (drawn from `audit_seed`) are recomputed
/// from the commutator; a mismatch above kAuditTolerance throws
/// NumericalError.
SymmetrySweep symmetry_sweep(const DensityMatrix& rho, const GridSpec& grid, bool pure_hint,
                             std::uint64_t audit_seed = 0);

}  // namespace spincat
