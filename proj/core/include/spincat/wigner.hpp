#pragma once

#include <vector>

#include "spincat/errors.hpp"
#include "spincat/fockspace.hpp"
#include "spincat/grid.hpp"
#include "spincat/states.hpp"

namespace spincat {

/// KernelMean: W = Tr[rho Delta(alpha, beta)], dimensionless, |W| <= 1.
/// PaperPrefactor: the same value times 1/pi^2, a quasiprobability density
/// in dq1 dp1 dq2 dp2.
enum class WignerConvention { KernelMean, PaperPrefactor };

double convention_factor(WignerConvention conv);
std::string_view to_string(WignerConvention conv);

enum class Evaluator {
  ClosedForm,   // analytic Fock-basis expansion
  KernelTrace,  // Tr[rho Delta] on the density matrix
  Printed,      // the printed closed forms with coherent-amplitude exponents
};

std::string_view to_string(Evaluator e);

/// u^pow_u conj(u)^pow_ubar * coeff; a Fock kernel element is a sum of these
/// times exp(-2 |u|^2).
struct KernelMonomial {
  int pow_u = 0;
  int pow_ubar = 0;
  double coeff = 0.0;
};

/// Expansion of Tr[|k><l| Delta(u)] = (-1)^k <l| D(2u) |k>.
std::vector<KernelMonomial> fock_kernel_monomials(int k, int l);

/// Tr[|k><l| Delta(u)] evaluated from its explicit finite sum.
Complex fock_kernel_element(int k, int l, Complex u);

/// Sum of the absolute values of the terms of that sum: the scale of its
/// rounding error.
double fock_kernel_term_scale(int k, int l, Complex u);

/// W for j = 1/2:
/// N^2 g(a) g(b) [|c0|^2 (4|b|^2 - 1) + |c1|^2 (4|a|^2 - 1) + 8 Re(c0 conj(c1) a conj(b))]
/// with g(u) = exp(-2|u|^2), c0 = cos(t1/2) + cos(t2/2),
/// c1 = e^{-i p1} sin(t1/2) + e^{-i p2} sin(t2/2). Accepts theta in [0, pi].
double wigner_closed_half(const CatParams& params, const PhasePoint& point, WignerConvention conv);

/// Double sum over the Dicke shell: sum_{k,l} c_k conj(c_l)
/// Tr[|k><l| Delta(a)] Tr[|2j-k><2j-l| Delta(b)]. Requires theta strictly
/// inside (0, pi); fails if the imaginary residue exceeds 1e-10, or if the
/// rounding-error bound of the alternating sums exceeds 1e-10 (large j
/// combined with large |alpha|, |beta|).
double wigner_closed_general(const CatParams& params, const PhasePoint& point, WignerConvention conv);

/// Same double sum for arbitrary shell amplitudes (no parameter checks).
Complex wigner_shell_sum(const std::vector<Complex>& amps, const PhasePoint& point);

/// Tr[rho Delta(alpha, beta)]. Exact for any rho supported inside its cutoff:
/// kernel entries come from closed-form matrix elements, not truncated
/// products. Warnings go to `diag` when the kernel underflows.
double wigner_kernel_trace(const DensityMatrix& rho, const PhasePoint& point, WignerConvention conv,
                           Diagnostics* diag = nullptr);

/// Printed spin-1/2 closed form, transcribed term by term (four exponential
/// terms with (N/pi)^2). Does not equal Tr[rho Delta]; kept to reproduce the
/// published surfaces.
double wigner_printed_half(const CatParams& params, const PhasePoint& point, WignerConvention conv);

/// Printed spin-j closed form, transcribed term by term. Requires theta in (0, pi).
double wigner_printed_general(const CatParams& params, const PhasePoint& point, WignerConvention conv);

/// Closed form appropriate to the spin: spin-1/2 form for j = 1/2, else the
/// general form.
double wigner_closed(const CatParams& params, const PhasePoint& point, WignerConvention conv);
double wigner_printed(const CatParams& params, const PhasePoint& point, WignerConvention conv);

/// One record per grid point, W and W^2 filled, skew and budget left NaN.
/// Kernel-trace evaluation uses cat_state(params) at n_max = 2j.
SweepResult wigner_grid(const CatParams& params, const GridSpec& grid, Evaluator evaluator,
                        WignerConvention conv);

/// Points where |W|^2 falls below this count as parity-symmetry violations.
inline constexpr double kViolationThreshold = 0.01;

}  // namespace spincat
