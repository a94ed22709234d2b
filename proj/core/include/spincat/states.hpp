#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spincat/fockspace.hpp"

namespace spincat {

/// Spin quantum number j, stored as the positive integer 2j.
struct Spin {
  int twice = 1;

  static Spin from_twice(int twice_j);
  /// Accepts "1/2", "3/2", "2", "5/2", ...
  static Spin parse(std::string_view text);

  double value() const { return 0.5 * twice; }
  std::string to_string() const;
  friend bool operator==(Spin, Spin) = default;
};

/// Magnetic quantum number m, stored as 2m.
struct Projection {
  int twice = 0;
};

/// Parameters of |Cat, j> = N_t (|theta1, phi1, j> + |theta2, phi2, j>).
struct CatParams {
  Spin j;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;

  /// theta in [0, pi], phi in [0, 2 pi], all finite.
  void validate() const;
  /// Same state with the two branches exchanged.
  CatParams swapped() const { return {j, theta2, theta1, phi2, phi1}; }
};

struct StateVector {
  TwoModeSpace space;
  CVector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// sqrt(C(n, k)). Exact integer arithmetic for n <= 30, log-gamma beyond.
double sqrt_binomial(int n, int k);

/// Dicke-basis amplitudes of |theta, phi, j>, indexed by k = j + m in 0..2j:
/// sqrt(C(2j, k)) cos(theta/2)^(2j - k) (e^{-i phi} sin(theta/2))^k.
std::vector<Complex> spin_coherent_amplitudes(Spin j, double theta, double phi);

/// Unnormalized branch sum of a cat state on the Dicke shell, indexed by k = j + m.
std::vector<Complex> cat_branch_sum(const CatParams& params);

/// Normalized cat amplitudes c_k on the shell (k = j + m); the state is
/// sum_k c_k |k> (x) |2j - k>.
std::vector<Complex> cat_amplitudes(const CatParams& params);

/// |j, m> = |j + m> (x) |j - m>.
StateVector dicke_vector(Spin j, Projection m, FockCutoff cutoff);

StateVector spin_coherent_vector(Spin j, double theta, double phi, FockCutoff cutoff);

/// Closed-form normalization for j = 1/2:
/// (2 + 2 cos(t1/2) cos(t2/2) + 2 cos(p1 - p2) sin(t1/2) sin(t2/2))^(-1/2).
double cat_norm_half(const CatParams& params);

/// Closed-form normalization for any j:
/// (2 + X^(2j) + conj(X)^(2j))^(-1/2), X = cos cos + e^{-i(p2 - p1)} sin sin.
double cat_norm_general(const CatParams& params);

StateVector cat_state(const CatParams& params, FockCutoff cutoff);
StateVector cat_state(const CatParams& params);  // cutoff n_max = 2j

DensityMatrix density_from_vector(const StateVector& psi);

/// Threshold on the norm of the unnormalized branch sum below which the
/// superposition is rejected.
inline constexpr double kDegenerateNorm = 1e-12;

}  // namespace spincat
