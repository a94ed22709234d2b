#include "spincat/states.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "spincat/errors.hpp"

namespace spincat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_shell_fits(Spin j, FockCutoff cutoff) {
  cutoff.validate();
  if (cutoff.n_max < j.twice) {
    throw InvalidArgument("cutoff n_max=" + std::to_string(cutoff.n_max) +
                          " cannot hold spin j=" + j.to_string() + " (needs n_max >= 2j)");
  }
}

StateVector shell_vector(Spin j, const std::vector<Complex>& amps, FockCutoff cutoff) {
  require_shell_fits(j, cutoff);
  StateVector psi{TwoModeSpace::uniform(cutoff), CVector::Zero(cutoff.levels() * cutoff.levels())};
  for (int k = 0; k <= j.twice; ++k) psi.amplitudes(psi.space.index(k, j.twice - k)) = amps[k];
  return psi;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw InvalidArgument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Spin Spin::from_twice(int twice_j) {
  if (twice_j <= 0) throw InvalidArgument("spin: 2j must be a positive integer");
  return Spin{twice_j};
}

Spin Spin::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_twice(2 * parse_int(text));
  const int num = parse_int(text.substr(0, slash));
  const int den = parse_int(text.substr(slash + 1));
  if (den == 2) return from_twice(num);
  if (den == 1) return from_twice(2 * num);
  throw InvalidArgument("spin must be an integer or half-integer: '" + std::string(text) + "'");
}

std::string Spin::to_string() const {
  return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

void CatParams::validate() const {
  Spin::from_twice(j.twice);
  const double angles[] = {theta1, theta2, phi1, phi2};
  for (double a : angles)
    if (!std::isfinite(a)) throw InvalidArgument("CatParams: non-finite angle");
  // Tolerate the rounding of expressions such as 2*pi.
  constexpr double slack = 1e-12;
  if (theta1 < -slack || theta1 > kPi + slack || theta2 < -slack || theta2 > kPi + slack) {
    throw InvalidArgument("CatParams: theta must lie in [0, pi]");
  }
  if (phi1 < -slack || phi1 > 2 * kPi + slack || phi2 < -slack || phi2 > 2 * kPi + slack) {
    throw InvalidArgument("CatParams: phi must lie in [0, 2 pi]");
  }
}

double sqrt_binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= 30) {
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / i;
    return std::sqrt(static_cast<double>(c));
  }
  return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

std::vector<Complex> spin_coherent_amplitudes(Spin j, double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  std::vector<Complex> amps(j.twice + 1);
  for (int k = 0; k <= j.twice; ++k) {
    const double mag = sqrt_binomial(j.twice, k) * std::pow(c, j.twice - k) * std::pow(s, k);
    amps[k] = mag * Complex(std::cos(k * phi), -std::sin(k * phi));
  }
  return amps;
}

std::vector<Complex> cat_branch_sum(const CatParams& params) {
  params.validate();
  auto a = spin_coherent_amplitudes(params.j, params.theta1, params.phi1);
  const auto b = spin_coherent_amplitudes(params.j, params.theta2, params.phi2);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

std::vector<Complex> cat_amplitudes(const CatParams& params) {
  auto amps = cat_branch_sum(params);
  const double n = cat_norm_general(params);
  for (auto& a : amps) a *= n;
  return amps;
}

StateVector dicke_vector(Spin j, Projection m, FockCutoff cutoff) {
  if (std::abs(m.twice) > j.twice || (j.twice - m.twice) % 2 != 0) {
    throw InvalidArgument("dicke_vector: m out of range for j=" + j.to_string());
  }
  std::vector<Complex> amps(j.twice + 1, 0.0);
  amps[(j.twice + m.twice) / 2] = 1.0;
  return shell_vector(j, amps, cutoff);
}

StateVector spin_coherent_vector(Spin j, double theta, double phi, FockCutoff cutoff) {
  return shell_vector(j, spin_coherent_amplitudes(j, theta, phi), cutoff);
}

double cat_norm_half(const CatParams& params) {
  params.validate();
  if (params.j.twice != 1) throw InvalidArgument("cat_norm_half requires j = 1/2");
  const double sq = 2.0 + 2.0 * std::cos(0.5 * params.theta1) * std::cos(0.5 * params.theta2) +
                    2.0 * std::cos(params.phi1 - params.phi2) * std::sin(0.5 * params.theta1) *
                        std::sin(0.5 * params.theta2);
  if (!(sq >= kDegenerateNorm * kDegenerateNorm)) {
    throw DegenerateSuperposition("cat state undefined: branches cancel");
  }
  return 1.0 / std::sqrt(sq);
}

double cat_norm_general(const CatParams& params) {
  params.validate();
  const double cc = std::cos(0.5 * params.theta1) * std::cos(0.5 * params.theta2);
  const double ss = std::sin(0.5 * params.theta1) * std::sin(0.5 * params.theta2);
  const Complex x = cc + std::polar(1.0, -(params.phi2 - params.phi1)) * ss;
  Complex xp = 1.0;
  for (int i = 0; i < params.j.twice; ++i) xp *= x;
  const double sq = 2.0 + (xp + std::conj(xp)).real();
  if (!(sq >= kDegenerateNorm * kDegenerateNorm)) {
    throw DegenerateSuperposition("cat state undefined: branches cancel");
  }
  return 1.0 / std::sqrt(sq);
}

StateVector cat_state(const CatParams& params, FockCutoff cutoff) {
  return shell_vector(params.j, cat_amplitudes(params), cutoff);
}

StateVector cat_state(const CatParams& params) { return cat_state(params, {params.j.twice}); }

DensityMatrix density_from_vector(const StateVector& psi) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > 1e-10) {
    throw InvalidArgument("density_from_vector: input norm " + std::to_string(n) + " is not 1");
  }
  CMatrix rho = psi.amplitudes * psi.amplitudes.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::from_matrix(psi.space, std::move(rho));
}

}  // namespace spincat
