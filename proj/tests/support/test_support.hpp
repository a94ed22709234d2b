#pragma once

#include <complex>
#include <numbers>
#include <random>

#include "spincat/errors.hpp"
#include "spincat/states.hpp"

namespace spincat::testing {

inline constexpr double kPi = std::numbers::pi;

inline CatParams fig1_params() { return {Spin::from_twice(1), kPi, 0.0, 0.0, 2.0 * kPi}; }
inline CatParams fig2_params(int twice_j) { return {Spin::from_twice(twice_j), kPi / 3.0, kPi / 2.0, 0.0, 2.0 * kPi}; }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  Complex disc(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * kPi));
  }

  PhasePoint point(double radius) { return {disc(radius), disc(radius)}; }

  // Interior angles keep the general closed form applicable; degenerate
  // superpositions are redrawn.
  CatParams params(int twice_j) {
    while (true) {
      CatParams p{Spin::from_twice(twice_j), uniform(0.05, kPi - 0.05), uniform(0.05, kPi - 0.05),
                  uniform(0.0, 2.0 * kPi), uniform(0.0, 2.0 * kPi)};
      try {
        cat_norm_general(p);
        return p;
      } catch (const DegenerateSuperposition&) {
      }
    }
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace spincat::testing
