// Verbatim transcriptions of the published closed forms. These do not equal
// Tr[rho Delta]; they exist so the published surfaces can be regenerated and
// compared against the kernel trace.
#include <cmath>
#include <numbers>

#include "spincat/wigner.hpp"

namespace spincat {

namespace {

Complex cpow(Complex z, int n) {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

double real_part(Complex v) {
  // The printed sums are not Hermitian-symmetric in general; the real part is
  // what a surface plot of W would show.
  return v.real();
}

}  // namespace

double wigner_printed_half(const CatParams& params, const PhasePoint& point, WignerConvention conv) {
  if (params.j.twice != 1) throw InvalidArgument("wigner_printed_half requires j = 1/2");
  if (!point.finite()) throw InvalidArgument("wigner_printed_half: non-finite phase point");
  const double n = cat_norm_half(params);
  const double c1 = std::cos(0.5 * params.theta1), c2 = std::cos(0.5 * params.theta2);
  const double s1 = std::sin(0.5 * params.theta1), s2 = std::sin(0.5 * params.theta2);
  const Complex cc = c1 + c2;
  const Complex sm = std::polar(s1, -params.phi1) + std::polar(s2, -params.phi2);
  const Complex sp = std::polar(s1, params.phi1) + std::polar(s2, params.phi2);
  const Complex a = point.alpha, b = point.beta;
  const Complex ac = std::conj(a), bc = std::conj(b);

  Complex t = cc * cc * std::exp(-2.0 * std::norm(a)) * std::exp(-2.0 * std::norm(1.0 - b));
  t += cc * sm * std::exp(-0.5 * std::norm(2.0 * a - 1.0) - a + ac) *
       std::exp(-0.5 * std::norm(1.0 - 2.0 * b) + b - bc);
  t += cc * sp * std::exp(-0.5 * std::norm(2.0 * b - 1.0) - b + bc) *
       std::exp(-0.5 * std::norm(1.0 - 2.0 * a) + a - ac);
  t += (s1 * s1 + 2.0 * s1 * s2 * std::cos(params.phi1 - params.phi2) + s2 * s2) *
       std::exp(-2.0 * std::norm(1.0 - a)) * std::exp(-2.0 * std::norm(b));
  return convention_factor(conv) * n * n * real_part(t);
}

double wigner_printed_general(const CatParams& params, const PhasePoint& point, WignerConvention conv) {
  params.validate();
  constexpr double pi = std::numbers::pi;
  if (!(params.theta1 > 0.0 && params.theta1 < pi && params.theta2 > 0.0 && params.theta2 < pi)) {
    throw InvalidArgument("wigner_printed_general: theta1, theta2 must lie strictly inside (0, pi)");
  }
  if (!point.finite()) throw InvalidArgument("wigner_printed_general: non-finite phase point");
  const int tj = params.j.twice;
  const double j = params.j.value();
  const double c1 = std::cos(0.5 * params.theta1), c2 = std::cos(0.5 * params.theta2);
  const double s1 = std::sin(0.5 * params.theta1), s2 = std::sin(0.5 * params.theta2);
  const Complex x = c1 * c2 + std::polar(s1 * s2, -(params.phi2 - params.phi1));
  const Complex xt = cpow(x, tj);
  const double denom = 2.0 + 2.0 * xt.real();
  if (denom < kDegenerateNorm * kDegenerateNorm) {
    throw DegenerateSuperposition("wigner_printed_general: branches cancel");
  }
  const double nt2 = 1.0 / denom;
  const Complex a = point.alpha, b = point.beta;
  const Complex da = a - std::conj(a), db = b - std::conj(b);

  Complex total = 0.0;
  for (int km = 0; km <= tj; ++km) {
    const double m = km - j;
    const Complex am = std::pow(c1, tj - km) * cpow(std::polar(s1, params.phi1), km) +
                       std::pow(c2, tj - km) * cpow(std::polar(s2, params.phi2), km);
    for (int kn = 0; kn <= tj; ++kn) {
      const double nn = kn - j;
      const Complex bn = std::pow(c1, tj - kn) * cpow(std::polar(s1, -params.phi1), kn) +
                         std::pow(c2, tj - kn) * cpow(std::polar(s2, -params.phi2), kn);
      const Complex e1 = std::exp(-0.5 * std::norm(2.0 * j - 2.0 * a + m + nn) + da * (m - nn));
      const Complex e2 = std::exp(-0.5 * std::norm(2.0 * j - 2.0 * b - m - nn) + db * (nn - m));
      total += sqrt_binomial(tj, km) * sqrt_binomial(tj, kn) * am * bn * e1 * e2;
    }
  }
  return convention_factor(conv) * nt2 * real_part(total);
}

}  // namespace spincat
