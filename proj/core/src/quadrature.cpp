#include "spincat/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "spincat/errors.hpp"
#include "spincat/numeric.hpp"

namespace spincat {

GaussHermite gauss_hermite(int order) {
  if (order < 1) throw InvalidArgument("gauss_hermite: order must be positive");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jac(k, k - 1) = jac(k - 1, k) = std::sqrt(0.5 * k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  GaussHermite rule;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int i = 0; i < order; ++i) {
    rule.nodes.push_back(eig.eigenvalues()(i));
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights.push_back(sqrt_pi * v0 * v0);
  }
  // Symmetrize: the exact rule is symmetric about zero.
  for (int i = 0; i < order / 2; ++i) {
    const int k = order - 1 - i;
    const double x = 0.5 * (rule.nodes[k] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[k] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[k] = x;
    rule.weights[i] = rule.weights[k] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

ComplexRule complex_gauss_rule(int order, double variance, Complex center) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw InvalidArgument("complex_gauss_rule: variance must be positive and finite");
  }
  const GaussHermite gh = gauss_hermite(order);
  const double scale = std::sqrt(variance);
  ComplexRule rule;
  rule.nodes.reserve(order * order);
  rule.weights.reserve(order * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      rule.nodes.push_back(center + scale * Complex(gh.nodes[a], gh.nodes[b]));
      rule.weights.push_back(gh.weights[a] * gh.weights[b] / std::numbers::pi);
    }
  return rule;
}

Complex integrate_gaussian_measure(double s, int order, const std::function<Complex(Complex)>& f) {
  const ComplexRule rule = complex_gauss_rule(order, s);
  CompensatedSum<Complex> acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc.add(rule.weights[i] * f(rule.nodes[i]));
  return acc.value();
}

}  // namespace spincat
