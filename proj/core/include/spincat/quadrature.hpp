#pragma once

#include <functional>
#include <vector>

#include "spincat/phase_point.hpp"

namespace spincat {

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to sqrt(pi)
};

/// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
GaussHermite gauss_hermite(int order);

/// Product rule for the complex Gaussian probability measure
/// exp(-|z - center|^2 / variance) d^2z / (pi variance). Weights sum to 1.
struct ComplexRule {
  std::vector<Complex> nodes;
  std::vector<double> weights;
};

ComplexRule complex_gauss_rule(int order, double variance, Complex center = 0.0);

/// Integral of f against d mu_s(z) = exp(-|z|^2/s) d^2z / (pi s), using the
/// order x order product rule.
Complex integrate_gaussian_measure(double s, int order, const std::function<Complex(Complex)>& f);

}  // namespace spincat
