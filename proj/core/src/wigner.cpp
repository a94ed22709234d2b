#include "spincat/wigner.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>

#include "spincat/numeric.hpp"

namespace spincat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// exp(-x/2) underflows to zero below this for x = |2 alpha|^2.
constexpr double kKernelUnderflow = 1400.0;

Complex ipow(Complex z, int n) {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

void require_interior(const CatParams& p, const char* who) {
  if (!(p.theta1 > 0.0 && p.theta1 < kPi && p.theta2 > 0.0 && p.theta2 < kPi)) {
    throw InvalidArgument(std::string(who) + ": theta1, theta2 must lie strictly inside (0, pi)");
  }
}

// table(k, l) = Tr[|k><l| Delta(u)] for k, l in 0..n.
CMatrix kernel_table(int n, Complex u) {
  CMatrix t(n + 1, n + 1);
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) t(k, l) = fock_kernel_element(k, l, u);
  return t;
}

// Rounding-error estimate for wigner_shell_sum: machine epsilon times the
// number of terms times the sum of absolute term magnitudes.
double shell_sum_error_bound(const std::vector<Complex>& amps, const PhasePoint& point) {
  const int top = static_cast<int>(amps.size()) - 1;
  double acc = 0.0;
  for (int k = 0; k <= top; ++k)
    for (int l = 0; l <= top; ++l) {
      acc += std::abs(amps[k]) * std::abs(amps[l]) * fock_kernel_term_scale(k, l, point.alpha) *
             fock_kernel_term_scale(top - k, top - l, point.beta);
    }
  return (top + 2) * std::numeric_limits<double>::epsilon() * acc;
}

// Largest rounding error tolerated from the explicit double sum.
constexpr double kClosedFormErrorBudget = 1e-10;

}  // namespace

double convention_factor(WignerConvention conv) {
  return conv == WignerConvention::KernelMean ? 1.0 : 1.0 / (kPi * kPi);
}

std::string_view to_string(WignerConvention conv) {
  return conv == WignerConvention::KernelMean ? "kernel-mean" : "paper";
}

std::string_view to_string(Evaluator e) {
  switch (e) {
    case Evaluator::ClosedForm: return "closed";
    case Evaluator::KernelTrace: return "kernel";
    case Evaluator::Printed: return "printed";
  }
  return "?";
}

std::vector<KernelMonomial> fock_kernel_monomials(int k, int l) {
  std::vector<KernelMonomial> terms;
  const double half_log_fact = 0.5 * (std::lgamma(k + 1.0) + std::lgamma(l + 1.0));
  for (int p = 0; p <= std::min(k, l); ++p) {
    const double log_mag = half_log_fact + (k + l - 2 * p) * std::numbers::ln2 -
                           std::lgamma(p + 1.0) - std::lgamma(k - p + 1.0) - std::lgamma(l - p + 1.0);
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    terms.push_back({l - p, k - p, sign * std::exp(log_mag)});
  }
  return terms;
}

double fock_kernel_term_scale(int k, int l, Complex u) {
  const double r = std::abs(u);
  double acc = 0.0;
  for (const auto& m : fock_kernel_monomials(k, l)) acc += std::abs(m.coeff) * std::pow(r, m.pow_u + m.pow_ubar);
  return acc * std::exp(-2.0 * r * r);
}

Complex fock_kernel_element(int k, int l, Complex u) {
  const Complex ubar = std::conj(u);
  Complex poly = 0.0;
  for (const auto& m : fock_kernel_monomials(k, l)) {
    poly += m.coeff * ipow(u, m.pow_u) * ipow(ubar, m.pow_ubar);
  }
  return poly * std::exp(-2.0 * std::norm(u));
}

Complex wigner_shell_sum(const std::vector<Complex>& amps, const PhasePoint& point) {
  const int top = static_cast<int>(amps.size()) - 1;
  const CMatrix ta = kernel_table(top, point.alpha);
  const CMatrix tb = kernel_table(top, point.beta);
  CompensatedSum<Complex> acc;
  for (int k = 0; k <= top; ++k)
    for (int l = 0; l <= top; ++l) {
      acc.add(amps[k] * std::conj(amps[l]) * ta(k, l) * tb(top - k, top - l));
    }
  return acc.value();
}

double wigner_closed_half(const CatParams& params, const PhasePoint& point, WignerConvention conv) {
  if (params.j.twice != 1) throw InvalidArgument("wigner_closed_half requires j = 1/2");
  if (!point.finite()) throw InvalidArgument("wigner_closed_half: non-finite phase point");
  const double n = cat_norm_half(params);
  const Complex c0 = std::cos(0.5 * params.theta1) + std::cos(0.5 * params.theta2);
  const Complex c1 = std::polar(std::sin(0.5 * params.theta1), -params.phi1) +
                     std::polar(std::sin(0.5 * params.theta2), -params.phi2);
  const Complex a = point.alpha;
  const Complex b = point.beta;
  const double gauss = std::exp(-2.0 * (std::norm(a) + std::norm(b)));
  const double bracket = std::norm(c0) * (4.0 * std::norm(b) - 1.0) +
                         std::norm(c1) * (4.0 * std::norm(a) - 1.0) +
                         8.0 * (c0 * std::conj(c1) * a * std::conj(b)).real();
  return convention_factor(conv) * n * n * gauss * bracket;
}

double wigner_closed_general(const CatParams& params, const PhasePoint& point, WignerConvention conv) {
  params.validate();
  require_interior(params, "wigner_closed_general");
  if (!point.finite()) throw InvalidArgument("wigner_closed_general: non-finite phase point");
  const std::vector<Complex> amps = cat_amplitudes(params);
  const double bound = shell_sum_error_bound(amps, point);
  if (bound > kClosedFormErrorBudget) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "wigner_closed_general: explicit sum ill-conditioned (rounding bound %.3g)", bound);
    throw NumericalError(msg);
  }
  const Complex w = wigner_shell_sum(amps, point);
  if (std::abs(w.imag()) > 1e-10) {
    throw NumericalError("wigner_closed_general: imaginary residue " + std::to_string(w.imag()));
  }
  return convention_factor(conv) * w.real();
}

double wigner_closed(const CatParams& params, const PhasePoint& point, WignerConvention conv) {
  return params.j.twice == 1 ? wigner_closed_half(params, point, conv)
                             : wigner_closed_general(params, point, conv);
}

double wigner_printed(const CatParams& params, const PhasePoint& point, WignerConvention conv) {
  return params.j.twice == 1 ? wigner_printed_half(params, point, conv)
                             : wigner_printed_general(params, point, conv);
}

double wigner_kernel_trace(const DensityMatrix& rho, const PhasePoint& point, WignerConvention conv,
                           Diagnostics* diag) {
  if (!point.finite()) throw InvalidArgument("wigner_kernel_trace: non-finite phase point");
  const SupportBlock& s = rho.support();
  if (diag) {
    const double x = 4.0 * std::max(std::norm(point.alpha), std::norm(point.beta));
    if (x > kKernelUnderflow) {
      diag->warn("kernel underflow: |2 alpha|^2 = " + std::to_string(x) +
                 " exceeds the representable range; W is unresolved at this point");
    }
  }
  const CMatrix a = displaced_parity_block(point.alpha, s.levels1, s.levels1);
  const CMatrix b = displaced_parity_block(point.beta, s.levels2, s.levels2);
  const Complex w = trace_with_kron(s.block, a, b);
  if (std::abs(w.imag()) > 1e-10) {
    throw NumericalError("wigner_kernel_trace: imaginary residue " + std::to_string(w.imag()));
  }
  return convention_factor(conv) * w.real();
}

SweepResult wigner_grid(const CatParams& params, const GridSpec& grid, Evaluator evaluator,
                        WignerConvention conv) {
  grid.validate();
  params.validate();
  std::optional<DensityMatrix> rho;
  if (evaluator == Evaluator::KernelTrace) rho = density_from_vector(cat_state(params));

  SweepResult result;
  result.meta = {{"j", params.j.to_string()},
                 {"theta1", params.theta1},
                 {"theta2", params.theta2},
                 {"phi1", params.phi1},
                 {"phi2", params.phi2},
                 {"evaluator", std::string(to_string(evaluator))},
                 {"convention", std::string(to_string(conv))},
                 {"grid", grid_to_json(grid)}};
  result.records.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto c = grid.coordinates(i);
    const PhasePoint pt = PhasePoint::from_quadratures(c[0], c[1], c[2], c[3]);
    double w = 0.0;
    try {
      switch (evaluator) {
        case Evaluator::ClosedForm: w = wigner_closed(params, pt, conv); break;
        case Evaluator::KernelTrace: w = wigner_kernel_trace(*rho, pt, conv); break;
        case Evaluator::Printed: w = wigner_printed(params, pt, conv); break;
      }
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("at (q1,p1,q2,p2)=(" + std::to_string(c[0]) + "," + std::to_string(c[1]) +
                            "," + std::to_string(c[2]) + "," + std::to_string(c[3]) + "): " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("at (q1,p1,q2,p2)=(" + std::to_string(c[0]) + "," + std::to_string(c[1]) +
                           "," + std::to_string(c[2]) + "," + std::to_string(c[3]) + "): " + e.what());
    }
    result.records[i] = {c[0], c[1], c[2], c[3], w, w * w, kNaN, kNaN};
  });
  return result;
}

}  // namespace spincat
