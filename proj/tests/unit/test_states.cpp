#include <gtest/gtest.h>

#include <cmath>

#include "spincat/errors.hpp"
#include "spincat/states.hpp"
#include "test_support.hpp"

using namespace spincat;
using spincat::testing::fig1_params;
using spincat::testing::fig2_params;
using spincat::testing::kPi;
using spincat::testing::Rng;

namespace {

// Norm of the branch sum computed directly from the Dicke expansion, with
// binomials from lgamma; shares nothing with the library's closed forms.
double brute_force_norm(const CatParams& p) {
  const int n = p.j.twice;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double binom = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
    auto branch = [&](double theta, double phi) {
      return std::sqrt(binom) * std::pow(std::cos(theta / 2), n - k) *
             std::pow(std::polar(std::sin(theta / 2), -phi), k);
    };
    sum += std::norm(branch(p.theta1, p.phi1) + branch(p.theta2, p.phi2));
  }
  return std::sqrt(sum);
}

double off_shell(const StateVector& v, int twice_j) {
  double worst = 0.0;
  for (int n1 = 0; n1 < v.space.levels1(); ++n1)
    for (int n2 = 0; n2 < v.space.levels2(); ++n2)
      if (n1 + n2 != twice_j) worst = std::max(worst, std::abs(v.amplitudes(v.space.index(n1, n2))));
  return worst;
}

}  // namespace

TEST(Spin, ParsesFractions) {
  EXPECT_EQ(Spin::parse("1/2").twice, 1);
  EXPECT_EQ(Spin::parse("3/2").twice, 3);
  EXPECT_EQ(Spin::parse("2").twice, 4);
  EXPECT_EQ(Spin::parse("5/2").to_string(), "5/2");
  EXPECT_EQ(Spin::parse("4").to_string(), "4");
  EXPECT_THROW(Spin::parse("0"), InvalidArgument);
  EXPECT_THROW(Spin::parse("1/3"), InvalidArgument);
  EXPECT_THROW(Spin::parse("-1/2"), InvalidArgument);
  EXPECT_THROW(Spin::parse("0.5"), InvalidArgument);
}

TEST(Dicke, BasisVectors) {
  struct Case {
    int twice_j, twice_m, n1, n2;
  };
  for (const Case c : {Case{1, -1, 0, 1}, Case{2, 0, 1, 1}, Case{4, 4, 4, 0}}) {
    const StateVector v = dicke_vector(Spin::from_twice(c.twice_j), Projection{c.twice_m}, FockCutoff{4});
    EXPECT_EQ(v.amplitudes(v.space.index(c.n1, c.n2)), Complex(1.0, 0.0));
    EXPECT_EQ(v.amplitudes.cwiseAbs().sum(), 1.0);
  }
}

TEST(Dicke, RejectsBadInput) {
  EXPECT_THROW(dicke_vector(Spin::from_twice(1), Projection{3}, FockCutoff{4}), InvalidArgument);
  EXPECT_THROW(dicke_vector(Spin::from_twice(2), Projection{1}, FockCutoff{4}), InvalidArgument);
  EXPECT_THROW(dicke_vector(Spin::from_twice(4), Projection{0}, FockCutoff{3}), InvalidArgument);
}

TEST(SpinCoherent, PolesAreDickeStates) {
  for (int tj = 1; tj <= 4; ++tj) {
    const Spin j = Spin::from_twice(tj);
    const StateVector south = spin_coherent_vector(j, 0.0, 1.3, FockCutoff{tj});
    EXPECT_NEAR(std::abs(south.amplitudes(south.space.index(0, tj))), 1.0, 1e-15);
    const double phi = 0.7;
    const StateVector north = spin_coherent_vector(j, kPi, phi, FockCutoff{tj});
    const Complex expected = std::polar(1.0, -tj * phi);
    EXPECT_LT(std::abs(north.amplitudes(north.space.index(tj, 0)) - expected), 1e-14);
    EXPECT_LT(off_shell(north, tj), 1e-15);
  }
}

TEST(SpinCoherent, SpinHalfEquator) {
  const StateVector v = spin_coherent_vector(Spin::from_twice(1), kPi / 2, 0.0, FockCutoff{1});
  EXPECT_NEAR(v.amplitudes(v.space.index(0, 1)).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v.amplitudes(v.space.index(1, 0)).real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(SpinCoherent, UnitNormAndJz) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const int tj = 1 + t % 8;
    const double theta = rng.uniform(0.0, kPi), phi = rng.uniform(0.0, 2 * kPi);
    const StateVector v = spin_coherent_vector(Spin::from_twice(tj), theta, phi, FockCutoff{tj + 1});
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LE(off_shell(v, tj), 1e-15);
    double jz = 0.0;
    for (int n1 = 0; n1 <= tj; ++n1) jz += 0.5 * (2 * n1 - tj) * std::norm(v.amplitudes(v.space.index(n1, tj - n1)));
    EXPECT_NEAR(jz, -0.5 * tj * std::cos(theta), 1e-10);
  }
}

TEST(CatNorm, IdenticalBranches) {
  for (int tj = 1; tj <= 6; ++tj) {
    const CatParams p{Spin::from_twice(tj), 1.1, 1.1, 0.4, 0.4};
    EXPECT_NEAR(cat_norm_general(p), 0.5, 1e-15);
    if (tj == 1) EXPECT_NEAR(cat_norm_half(p), 0.5, 1e-15);
  }
}

TEST(CatNorm, Fig1OrthogonalBranches) { EXPECT_NEAR(cat_norm_half(fig1_params()), 1.0 / std::sqrt(2.0), 1e-15); }

TEST(CatNorm, VectorNormOracle) {
  for (int tj : {1, 4}) {
    const CatParams p = fig2_params(tj);
    EXPECT_NEAR(cat_norm_general(p), 1.0 / brute_force_norm(p), 1e-12);
  }
  EXPECT_NEAR(cat_norm_half(fig2_params(1)), 1.0 / brute_force_norm(fig2_params(1)), 1e-12);
}

TEST(CatNorm, RandomDrawsMatchVectorNorm) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const CatParams p = rng.params(1 + t % 6);
    EXPECT_NEAR(cat_norm_general(p), 1.0 / brute_force_norm(p), 1e-10);
  }
}

TEST(CatNorm, GeneralReducesToHalf) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const CatParams p = rng.params(1);
    EXPECT_NEAR(cat_norm_general(p), cat_norm_half(p), 1e-12);
  }
}

TEST(CatNorm, DegenerateSuperpositionRejected) {
  // Both branches sit at the north pole with phases e^0 and e^{-i pi}.
  const CatParams p{Spin::from_twice(1), kPi, kPi, 0.0, kPi};
  EXPECT_THROW(cat_norm_half(p), DegenerateSuperposition);
  EXPECT_THROW(cat_norm_general(p), DegenerateSuperposition);
  EXPECT_THROW(cat_state(p), DegenerateSuperposition);
}

TEST(CatState, Fig1IsSymmetricOneExcitationState) {
  const StateVector v = cat_state(fig1_params(), FockCutoff{3});
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT(std::abs(std::abs(v.amplitudes(v.space.index(0, 1))) - r), 1e-15);
  EXPECT_LT(std::abs(std::abs(v.amplitudes(v.space.index(1, 0))) - r), 1e-15);
  const DensityMatrix rho = density_from_vector(v);
  EXPECT_NEAR(rho.matrix()(v.space.index(0, 1), v.space.index(1, 0)).real(), 0.5, 1e-15);
}

TEST(CatState, IdenticalBranchesGiveCoherentState) {
  const CatParams p{Spin::from_twice(3), 0.9, 0.9, 2.0, 2.0};
  const StateVector cat = cat_state(p, FockCutoff{5});
  const StateVector coh = spin_coherent_vector(p.j, 0.9, 2.0, FockCutoff{5});
  EXPECT_LT((cat.amplitudes - coh.amplitudes).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CatState, SpinOneHandExpansion) {
  const CatParams p = fig2_params(2);
  const StateVector v = cat_state(p, FockCutoff{2});
  // |theta, phi, 1> = c^2 |0,2> + sqrt(2) c s e^{-i phi} |1,1> + s^2 e^{-2 i phi} |2,0>
  // with c = cos(theta/2), s = sin(theta/2).
  auto branch = [](double theta, double phi) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return std::array<Complex, 3>{c * c, std::sqrt(2.0) * c * s * std::polar(1.0, -phi),
                                  s * s * std::polar(1.0, -2 * phi)};
  };
  const auto b1 = branch(p.theta1, p.phi1), b2 = branch(p.theta2, p.phi2);
  std::array<Complex, 3> sum{};
  double norm = 0.0;
  for (int k = 0; k < 3; ++k) {
    sum[k] = b1[k] + b2[k];
    norm += std::norm(sum[k]);
  }
  for (int k = 0; k < 3; ++k)
    EXPECT_LT(std::abs(v.amplitudes(v.space.index(k, 2 - k)) - sum[k] / std::sqrt(norm)), 1e-12);
}

TEST(CatState, ShellSupportAndUnitNorm) {
  Rng rng(14);
  for (int t = 0; t < 40; ++t) {
    const int tj = 1 + t % 8;
    const StateVector v = cat_state(rng.params(tj), FockCutoff{tj + 3});
    EXPECT_NEAR(v.norm(), 1.0, 1e-10);
    EXPECT_LE(off_shell(v, tj), 1e-15);
  }
}

TEST(CatState, InsufficientCutoffRejected) {
  EXPECT_THROW(cat_state(fig2_params(4), FockCutoff{3}), InvalidArgument);
}

TEST(DensityFromVector, ProjectorProperties) {
  const StateVector vac = dicke_vector(Spin::from_twice(1), Projection{-1}, FockCutoff{2});
  const DensityMatrix r0 = density_from_vector(vac);
  EXPECT_EQ(r0.matrix().cwiseAbs().sum(), 1.0);

  Rng rng(15);
  const StateVector v = cat_state(rng.params(3), FockCutoff{5});
  const DensityMatrix rho = density_from_vector(v);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-10);
  EXPECT_LT((rho.matrix() * v.amplitudes - v.amplitudes).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
}

TEST(Binomial, ExactAndLogRegimes) {
  EXPECT_DOUBLE_EQ(sqrt_binomial(4, 2), std::sqrt(6.0));
  EXPECT_DOUBLE_EQ(sqrt_binomial(30, 15), std::sqrt(155117520.0));
  EXPECT_NEAR(sqrt_binomial(100, 50) / std::sqrt(1.0089134454556419e29), 1.0, 1e-12);
}
