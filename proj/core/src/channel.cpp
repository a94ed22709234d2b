#include "spincat/channel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "spincat/numeric.hpp"
#include "spincat/quadrature.hpp"

namespace spincat {

namespace {

struct MatrixSum {
  CMatrix sum;
  CMatrix carry;

  MatrixSum(Eigen::Index r, Eigen::Index c) : sum(CMatrix::Zero(r, c)), carry(CMatrix::Zero(r, c)) {}
  void add(const CMatrix& x) {
    const CMatrix y = x - carry;
    const CMatrix t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Quadrature nodes for the Kraus integral together with the rescaled weights
// w_i exp(|z_i|^2) / (s + 1), which turn the rule for exp(-(1 + 1/s)|z|^2)
// into one for d mu_s. The order grows from ch.quad_order in steps of 8
// until the rescaled weights integrate the measure itself to
// kKrausWeightTolerance; for large s the high-photon tail of the output needs
// more nodes than the low-order entries do.
constexpr double kKrausWeightTolerance = 1e-10;
constexpr int kMaxKrausOrder = 128;

ComplexRule kraus_rule(const ChannelParams& ch, int* order_used) {
  for (int order = ch.quad_order;; order += 8) {
    ComplexRule rule = complex_gauss_rule(order, ch.s / (ch.s + 1.0));
    CompensatedSum<double> total;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      rule.weights[i] *= std::exp(std::norm(rule.nodes[i])) / (ch.s + 1.0);
      total.add(rule.weights[i]);
    }
    if (std::abs(total.value() - 1.0) <= kKrausWeightTolerance || order + 8 > kMaxKrausOrder) {
      *order_used = order;
      return rule;
    }
  }
}

CMatrix mode_block(const SupportBlock& sb, int b, int bp) {
  CMatrix x(sb.levels1, sb.levels1);
  for (int n = 0; n < sb.levels1; ++n)
    for (int np = 0; np < sb.levels1; ++np) x(n, np) = sb.block(n * sb.levels2 + b, np * sb.levels2 + bp);
  return x;
}

// Smallest output level count whose trace loss, relative to the
// quadrature's own untruncated total, is below kChannelTraceLoss.
int choose_output_levels(const SupportBlock& sb, const ComplexRule& rule) {
  constexpr int kMaxLevels = 2048;
  std::vector<CMatrix> diag_blocks;
  CompensatedSum<double> input_trace;
  for (int b = 0; b < sb.levels2; ++b) {
    diag_blocks.push_back(mode_block(sb, b, b));
    input_trace.add(diag_blocks.back().trace().real());
  }
  CompensatedSum<double> untruncated;
  for (double w : rule.weights) untruncated.add(w * input_trace.value());

  int levels = sb.levels1 + 20;
  while (true) {
    levels = std::min(levels, kMaxLevels);
    std::vector<CompensatedSum<double>> row(levels);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const CMatrix d = displacement_block(rule.nodes[i], levels, sb.levels1);
      for (const CMatrix& x : diag_blocks) {
        const CMatrix t = d * x;
        for (int m = 0; m < levels; ++m) {
          row[m].add(rule.weights[i] * (t.row(m).cwiseProduct(d.row(m).conjugate())).sum().real());
        }
      }
    }
    double cum = 0.0;
    for (int m = 0; m < levels; ++m) {
      cum += row[m].value();
      if (m + 1 >= sb.levels1 && untruncated.value() - cum <= kChannelTraceLoss) return m + 1;
    }
    if (levels == kMaxLevels) {
      throw NumericalError("apply_channel_density: output truncation exceeds " +
                           std::to_string(kMaxLevels) + " levels");
    }
    levels *= 2;
  }
}

CMatrix swap_modes(const CMatrix& m, int l1, int l2) {
  // (n1, n2) at n1*l2 + n2  ->  (n2, n1) at n2*l1 + n1
  const int d = l1 * l2;
  Eigen::VectorXi perm(d);
  for (int n1 = 0; n1 < l1; ++n1)
    for (int n2 = 0; n2 < l2; ++n2) perm(n1 * l2 + n2) = n2 * l1 + n1;
  CMatrix out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(perm(r), perm(c)) = m(r, c);
  return out;
}

ChannelOutput apply_mode1(const DensityMatrix& rho, const ChannelParams& ch) {
  const SupportBlock& sb = rho.support();
  int order = 0;
  const ComplexRule rule = kraus_rule(ch, &order);
  const int levels = choose_output_levels(sb, rule);
  const int l1 = sb.levels1;
  const int l2 = sb.levels2;

  std::vector<CMatrix> disp(rule.nodes.size());
  parallel_for(rule.nodes.size(), [&](std::size_t i) {
    disp[i] = displacement_block(rule.nodes[i], levels, l1);
  });

  std::vector<std::pair<int, int>> pairs;
  for (int b = 0; b < l2; ++b)
    for (int bp = b; bp < l2; ++bp) pairs.emplace_back(b, bp);
  std::vector<CMatrix> out_blocks(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const CMatrix x = mode_block(sb, pairs[k].first, pairs[k].second);
    if (x.cwiseAbs().maxCoeff() == 0.0) {
      out_blocks[k] = CMatrix::Zero(levels, levels);
      return;
    }
    MatrixSum acc(levels, levels);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc.add(rule.weights[i] * (disp[i] * x * disp[i].adjoint()));
    }
    out_blocks[k] = acc.sum;
  });

  CMatrix out = CMatrix::Zero(levels * l2, levels * l2);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [b, bp] = pairs[k];
    for (int m = 0; m < levels; ++m)
      for (int mp = 0; mp < levels; ++mp) {
        out(m * l2 + b, mp * l2 + bp) = out_blocks[k](m, mp);
        if (b != bp) out(mp * l2 + bp, m * l2 + b) = std::conj(out_blocks[k](m, mp));
      }
  }
  out = 0.5 * (out + out.adjoint()).eval();
  const double raw = out.trace().real();
  if (std::abs(raw - 1.0) > kChannelTraceDrift) {
    throw NumericalError("apply_channel_density: trace drift " + std::to_string(raw - 1.0) +
                         " exceeds 1e-6; increase quad_order");
  }
  out /= raw;

  TwoModeSpace space{FockCutoff{std::max(levels, rho.space().levels1()) - 1}, rho.space().mode2};
  SupportBlock placed{levels, l2, std::move(out)};
  return {DensityMatrix::from_matrix(space, embed_support_block(space, placed)), raw, levels, order};
}

void require_closed_domain(const CatParams& params, const char* who) {
  params.validate();
  if (params.j.twice == 1) return;
  constexpr double pi = std::numbers::pi;
  if (!(params.theta1 > 0.0 && params.theta1 < pi && params.theta2 > 0.0 && params.theta2 < pi)) {
    throw InvalidArgument(std::string(who) + ": theta1, theta2 must lie strictly inside (0, pi) for j > 1/2");
  }
}

Complex ipow(Complex z, int n) {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Table of single-mode kernel elements, smoothed when s > 0.
CMatrix kernel_table(int top, Complex u, double s) {
  CMatrix t(top + 1, top + 1);
  for (int k = 0; k <= top; ++k)
    for (int l = 0; l <= top; ++l)
      t(k, l) = s > 0.0 ? smoothed_kernel_element(k, l, u, s) : fock_kernel_element(k, l, u);
  return t;
}

// Absolute-value counterpart of kernel_table.
Eigen::MatrixXd term_scale_table(int top, Complex u, double s) {
  Eigen::MatrixXd t(top + 1, top + 1);
  for (int k = 0; k <= top; ++k)
    for (int l = 0; l <= top; ++l) {
      if (s > 0.0) {
        double acc = 0.0;
        for (const auto& m : fock_kernel_monomials(k, l))
          acc += std::abs(m.coeff) * smoothed_monomial_scale(m.pow_u, m.pow_ubar, u, s);
        t(k, l) = acc;
      } else {
        t(k, l) = fock_kernel_term_scale(k, l, u);
      }
    }
  return t;
}

// Largest rounding error tolerated from the explicit convolution sums.
constexpr double kConvolutionErrorBudget = 1e-10;

}  // namespace

void ChannelParams::validate() const {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("ChannelParams: s must be positive and finite");
  if (quad_order < 8) throw InvalidArgument("ChannelParams: quad_order must be >= 8");
  if (!(quad_radius_sigmas > 0.0) || !std::isfinite(quad_radius_sigmas)) {
    throw InvalidArgument("ChannelParams: quad_radius_sigmas must be positive");
  }
}

ChannelOutput apply_channel_density_detailed(const DensityMatrix& rho, const ChannelParams& ch) {
  ch.validate();
  ChannelOutput out = apply_mode1(rho, ch);
  if (!ch.both_modes) return out;

  const TwoModeSpace& sp = out.rho.space();
  const CMatrix swapped = swap_modes(out.rho.matrix(), sp.levels1(), sp.levels2());
  const TwoModeSpace swapped_space{sp.mode2, sp.mode1};
  ChannelOutput second =
      apply_mode1(DensityMatrix::from_matrix(swapped_space, swapped), ch);
  const TwoModeSpace& sp2 = second.rho.space();
  const TwoModeSpace final_space{sp2.mode2, sp2.mode1};
  return {DensityMatrix::from_matrix(final_space,
                                     swap_modes(second.rho.matrix(), sp2.levels1(), sp2.levels2())),
          out.raw_trace * second.raw_trace, out.mode1_levels, std::max(out.quad_order_used, second.quad_order_used)};
}

DensityMatrix apply_channel_density(const DensityMatrix& rho, const ChannelParams& ch) {
  return apply_channel_density_detailed(rho, ch).rho;
}

double smoothed_monomial_scale(int p, int q, Complex alpha, double s) {
  const double width = 2.0 * s + 1.0;
  const double c = 2.0 + 1.0 / s;
  const double mu = std::abs(alpha) / width;
  double sum = 0.0;
  double fact = 1.0;
  for (int r = 0; r <= std::min(p, q); ++r) {
    if (r > 0) fact *= r;
    sum += binomial(p, r) * binomial(q, r) * fact * std::pow(c, -r) * std::pow(mu, p + q - 2 * r);
  }
  return std::exp(-2.0 * std::norm(alpha) / width) / width * sum;
}

Complex smoothed_monomial(int p, int q, Complex alpha, double s) {
  const double width = 2.0 * s + 1.0;
  const double c = 2.0 + 1.0 / s;
  const Complex mu = alpha / width;
  Complex sum = 0.0;
  double fact = 1.0;
  for (int r = 0; r <= std::min(p, q); ++r) {
    if (r > 0) fact *= r;
    sum += binomial(p, r) * binomial(q, r) * fact * std::pow(c, -r) * ipow(mu, p - r) *
           ipow(std::conj(mu), q - r);
  }
  return std::exp(-2.0 * std::norm(alpha) / width) / width * sum;
}

Complex smoothed_kernel_element(int k, int l, Complex u, double s) {
  Complex acc = 0.0;
  for (const auto& m : fock_kernel_monomials(k, l)) acc += m.coeff * smoothed_monomial(m.pow_u, m.pow_ubar, u, s);
  return acc;
}

double channel_wigner_convolution(const CatParams& params, const ChannelParams& ch,
                                  const PhasePoint& point, WignerConvention conv) {
  ch.validate();
  require_closed_domain(params, "channel_wigner_convolution");
  if (!point.finite()) throw InvalidArgument("channel_wigner_convolution: non-finite phase point");
  const std::vector<Complex> c = cat_amplitudes(params);
  const int top = static_cast<int>(c.size()) - 1;
  const CMatrix ta = kernel_table(top, point.alpha, ch.s);
  const CMatrix tb = kernel_table(top, point.beta, ch.both_modes ? ch.s : 0.0);
  const Eigen::MatrixXd sa = term_scale_table(top, point.alpha, ch.s);
  const Eigen::MatrixXd sb = term_scale_table(top, point.beta, ch.both_modes ? ch.s : 0.0);
  double scale = 0.0;
  for (int k = 0; k <= top; ++k)
    for (int l = 0; l <= top; ++l) scale += std::abs(c[k]) * std::abs(c[l]) * sa(k, l) * sb(top - k, top - l);
  const double bound = (top + 2) * std::numeric_limits<double>::epsilon() * scale;
  if (bound > kConvolutionErrorBudget) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "channel_wigner_convolution: explicit sum ill-conditioned (rounding bound %.3g)",
                  bound);
    throw NumericalError(msg);
  }
  CompensatedSum<Complex> acc;
  for (int k = 0; k <= top; ++k)
    for (int l = 0; l <= top; ++l) acc.add(c[k] * std::conj(c[l]) * ta(k, l) * tb(top - k, top - l));
  const Complex w = acc.value();
  if (!std::isfinite(w.real()) || std::abs(w.imag()) > 1e-10) {
    throw NumericalError("channel_wigner_convolution: non-convergent or complex result");
  }
  return convention_factor(conv) * w.real();
}

namespace {

// Recentred rule for int f(alpha - z) exp(-2|alpha - z|^2) d mu_s(z): nodes
// follow exp(-c |z - z0|^2) with c = 2 + 1/s, z0 = 2 s alpha / (2 s + 1),
// and each weight carries the ratio of d mu_s to that Gaussian.
ComplexRule recentred_rule(int order, double s, Complex alpha) {
  const double c = 2.0 + 1.0 / s;
  const Complex z0 = 2.0 * s * alpha / (2.0 * s + 1.0);
  ComplexRule rule = complex_gauss_rule(order, 1.0 / c, z0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Complex z = rule.nodes[i];
    rule.weights[i] *= std::exp(-std::norm(z) / s + c * std::norm(z - z0)) / (s * c);
  }
  return rule;
}

}  // namespace

double channel_wigner_quadrature(const CatParams& params, const ChannelParams& ch,
                                 const PhasePoint& point, WignerConvention conv) {
  ch.validate();
  require_closed_domain(params, "channel_wigner_quadrature");
  if (!point.finite()) throw InvalidArgument("channel_wigner_quadrature: non-finite phase point");
  const ComplexRule ra = recentred_rule(ch.quad_order, ch.s, point.alpha);
  const ComplexRule rb = ch.both_modes ? recentred_rule(ch.quad_order, ch.s, point.beta)
                                       : ComplexRule{{0.0}, {1.0}};
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < ra.nodes.size(); ++i)
    for (std::size_t k = 0; k < rb.nodes.size(); ++k) {
      const PhasePoint shifted{point.alpha - ra.nodes[i], point.beta - rb.nodes[k]};
      acc.add(ra.weights[i] * rb.weights[k] *
              wigner_closed(params, shifted, WignerConvention::KernelMean));
    }
  return convention_factor(conv) * acc.value();
}

double channel_wigner_printed(const CatParams& params, const ChannelParams& ch,
                              const PhasePoint& point, WignerConvention conv) {
  ch.validate();
  require_closed_domain(params, "channel_wigner_printed");
  if (!point.finite()) throw InvalidArgument("channel_wigner_printed: non-finite phase point");
  const ComplexRule rule = complex_gauss_rule(ch.quad_order, ch.s);
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const PhasePoint shifted{point.alpha - rule.nodes[i], point.beta};
    acc.add(rule.weights[i] * wigner_printed(params, shifted, conv));
  }
  return acc.value();
}

}  // namespace spincat
