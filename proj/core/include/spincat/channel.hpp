#pragma once

#include "spincat/fockspace.hpp"
#include "spincat/states.hpp"
#include "spincat/wigner.hpp"

namespace spincat {

/// Gaussian random-displacement channel on mode 1,
/// rho -> int D(z) rho D(z)^dagger d mu_s(z), d mu_s = exp(-|z|^2/s) d^2z / (pi s).
struct ChannelParams {
  double s = 1.0;
  int quad_order = 24;              // Gauss-Hermite nodes per real dimension (minimum)
  double quad_radius_sigmas = 6.0;  // support radius in units of sqrt(s)
  bool both_modes = false;          // also apply to mode 2 (not part of the model)

  void validate() const;
};

struct ChannelOutput {
  DensityMatrix rho;
  double raw_trace = 1.0;  // trace before renormalization
  int mode1_levels = 0;
  int quad_order_used = 0;
};

/// Trace loss tolerated when choosing the output mode-1 truncation.
inline constexpr double kChannelTraceLoss = 1e-11;
/// Drift of the raw output trace that aborts the computation.
inline constexpr double kChannelTraceDrift = 1e-6;

/// Kraus-quadrature route. Nodes follow a Gauss-Hermite rule matched to the
/// full Gaussian factor of the integrand (exp(-|z|^2) from the two displaced
/// matrix elements times the measure), so each entry is integrated exactly up
/// to the rule's polynomial degree. The order starts at ch.quad_order and grows
/// until the rule integrates the measure itself to 1e-10. The output mode-1
/// truncation grows until the trace loss is below kChannelTraceLoss.
ChannelOutput apply_channel_density_detailed(const DensityMatrix& rho, const ChannelParams& ch);
DensityMatrix apply_channel_density(const DensityMatrix& rho, const ChannelParams& ch);

/// W of the channel output from the closed form, convolving each Fock kernel
/// monomial analytically:
/// int exp(-2|a - z|^2) (a - z)^p conj(a - z)^q d mu_s(z) is a finite sum.
double channel_wigner_convolution(const CatParams& params, const ChannelParams& ch,
                                  const PhasePoint& point, WignerConvention conv);

/// Same quantity by numerical quadrature of int W(alpha - z, beta) d mu_s(z).
/// The rule is recentred on the peak of the integrand's Gaussian factor,
/// which makes it exact for these integrands at any order above 2j + 1.
double channel_wigner_quadrature(const CatParams& params, const ChannelParams& ch,
                                 const PhasePoint& point, WignerConvention conv);

/// Quadrature of the printed closed forms, with the rule of d mu_s taken
/// literally (centred at zero, variance s).
double channel_wigner_printed(const CatParams& params, const ChannelParams& ch,
                              const PhasePoint& point, WignerConvention conv);

/// Convolved monomial integral
/// int exp(-2|alpha - z|^2) (alpha - z)^p conj(alpha - z)^q d mu_s(z).
Complex smoothed_monomial(int p, int q, Complex alpha, double s);

/// The same sum with every term replaced by its absolute value.
double smoothed_monomial_scale(int p, int q, Complex alpha, double s);

/// Tr[|k><l| Delta(u)] averaged over u -> u - z, z ~ mu_s.
Complex smoothed_kernel_element(int k, int l, Complex u, double s);

}  // namespace spincat
