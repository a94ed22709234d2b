#pragma once

#include <cmath>
#include <complex>

namespace spincat {

using Complex = std::complex<double>;

// A point of two-mode phase space. alpha = (q1 + i p1)/sqrt(2),
// beta = (q2 + i p2)/sqrt(2), with hbar = 1.
struct PhasePoint {
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};

  static PhasePoint from_quadratures(double q1, double p1, double q2, double p2) {
    const double r = 1.0 / std::sqrt(2.0);
    return {Complex(q1 * r, p1 * r), Complex(q2 * r, p2 * r)};
  }

  double q1() const { return std::sqrt(2.0) * alpha.real(); }
  double p1() const { return std::sqrt(2.0) * alpha.imag(); }
  double q2() const { return std::sqrt(2.0) * beta.real(); }
  double p2() const { return std::sqrt(2.0) * beta.imag(); }

  bool finite() const {
    return std::isfinite(alpha.real()) && std::isfinite(alpha.imag()) &&
           std::isfinite(beta.real()) && std::isfinite(beta.imag());
  }
};

}  // namespace spincat
