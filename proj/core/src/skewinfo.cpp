#include "spincat/skewinfo.hpp"

#include <algorithm>
#include <atomic>
#include <random>

#include "spincat/errors.hpp"
#include "spincat/numeric.hpp"

namespace spincat {

namespace {

CMatrix squared_kernel_block(Complex u, int levels) {
  const KernelFactor f = kernel_factor(u, levels);
  if (!f.resolved) {
    throw NumericalError("skew information: kernel columns unresolved at |u| = " +
                         std::to_string(std::abs(u)));
  }
  return f.columns.adjoint() * f.columns;
}

}  // namespace

SkewEvaluator::SkewEvaluator(const DensityMatrix& rho)
    : rho_(rho.support()), root_(psd_sqrt(rho.support().block)) {}

double SkewEvaluator::wigner(const PhasePoint& p) const {
  const CMatrix a = displaced_parity_block(p.alpha, rho_.levels1, rho_.levels1);
  const CMatrix b = displaced_parity_block(p.beta, rho_.levels2, rho_.levels2);
  return trace_with_kron(rho_.block, a, b).real();
}

double SkewEvaluator::delta_squared_mean(const PhasePoint& p) const {
  const CMatrix a2 = squared_kernel_block(p.alpha, rho_.levels1);
  const CMatrix b2 = squared_kernel_block(p.beta, rho_.levels2);
  return trace_with_kron(rho_.block, a2, b2).real();
}

double SkewEvaluator::variance(const PhasePoint& p) const {
  const double w = wigner(p);
  return delta_squared_mean(p) - w * w;
}

double SkewEvaluator::skew(const PhasePoint& p, bool* clamped) const {
  if (!p.finite()) throw InvalidArgument("skew_information: non-finite phase point");
  const CMatrix a = displaced_parity_block(p.alpha, rho_.levels1, rho_.levels1);
  const CMatrix b = displaced_parity_block(p.beta, rho_.levels2, rho_.levels2);
  const CMatrix y = right_multiply_kron(root_, a, b);  // sqrt(rho) Delta
  const double cross = y.cwiseProduct(y.transpose()).sum().real();
  double i = delta_squared_mean(p) - cross;
  if (clamped) *clamped = false;
  if (i < 0.0) {
    if (i < -kSkewClamp) {
      throw NumericalError("skew_information: value " + std::to_string(i) +
                           " below -1e-9; truncation inadequate");
    }
    i = 0.0;
    if (clamped) *clamped = true;
  }
  return i;
}

SymmetryRecord SkewEvaluator::evaluate(const PhasePoint& p, bool* clamped) const {
  SymmetryRecord r;
  r.point = p;
  r.w = wigner(p);
  r.w_squared = r.w * r.w;
  r.skew = skew(p, clamped);
  r.budget = r.skew + r.w_squared;
  return r;
}

double parity_variance(const DensityMatrix& rho, const PhasePoint& point) {
  if (!point.finite()) throw InvalidArgument("parity_variance: non-finite phase point");
  return SkewEvaluator(rho).variance(point);
}

double skew_information(const DensityMatrix& rho, const PhasePoint& point) {
  return SkewEvaluator(rho).skew(point);
}

SymmetrySweep symmetry_sweep(const DensityMatrix& rho, const GridSpec& grid, bool pure_hint,
                             std::uint64_t audit_seed) {
  grid.validate();
  const SkewEvaluator eval(rho);
  SymmetrySweep out;
  out.records.resize(grid.size());
  std::atomic<std::size_t> clamped{0};

  parallel_for(grid.size(), [&](std::size_t i) {
    const PhasePoint p = grid.point(i);
    if (pure_hint) {
      SymmetryRecord r;
      r.point = p;
      r.w = eval.wigner(p);
      r.w_squared = r.w * r.w;
      r.skew = 1.0 - r.w_squared;
      r.budget = 1.0;
      out.records[i] = r;
    } else {
      bool c = false;
      out.records[i] = eval.evaluate(p, &c);
      if (c) ++clamped;
    }
  });
  out.clamped = clamped.load();

  if (pure_hint) {
    std::vector<std::size_t> all(grid.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::mt19937_64 rng(audit_seed);
    std::sample(all.begin(), all.end(), std::back_inserter(out.audited), 5, rng);
    for (std::size_t idx : out.audited) {
      const SymmetryRecord& r = out.records[idx];
      bool c = false;
      const double full = eval.skew(r.point, &c);
      if (c) ++out.clamped;
      if (std::abs(full - r.skew) > kAuditTolerance) {
        throw NumericalError("symmetry_sweep: audit failed at grid index " + std::to_string(idx) +
                             " (commutator " + std::to_string(full) + " vs 1 - W^2 " +
                             std::to_string(r.skew) + "); state is not pure or cutoff inadequate");
      }
    }
  }
  return out;
}

}  // namespace spincat
