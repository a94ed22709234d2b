#include <gtest/gtest.h>

#include <cmath>

#include "spincat/channel.hpp"
#include "spincat/skewinfo.hpp"
#include "test_support.hpp"

using namespace spincat;
using spincat::testing::fig1_params;
using spincat::testing::kPi;
using spincat::testing::Rng;

namespace {

constexpr auto kMean = WignerConvention::KernelMean;
constexpr double kFig1GoldenW = 0.36787944117144189;

// fig1 preset cat through the s = 1 channel, evaluated at alpha = 0.3,
// beta = 0.2i. Reference: polar quadrature (Gauss-Laguerre radius, uniform
// angle) of padded scipy displacements, square root by scipy sqrtm; the 30-
// and 40-node radial rules agree to 4e-15.
constexpr double kChannelW = -0.067616751645890233;
constexpr double kChannelSkew = 0.22065104227905341;

DensityMatrix pure(const CatParams& p) { return density_from_vector(cat_state(p)); }

DensityMatrix diagonal_state(std::initializer_list<std::pair<std::pair<int, int>, double>> entries, int n_max) {
  const TwoModeSpace s = TwoModeSpace::uniform(FockCutoff{n_max});
  CMatrix m = CMatrix::Zero(s.dim(), s.dim());
  for (const auto& [nn, w] : entries) m(s.index(nn.first, nn.second), s.index(nn.first, nn.second)) = w;
  return DensityMatrix::from_matrix(s, m);
}

}  // namespace

TEST(Variance, ZeroAtParityEigenstates) {
  EXPECT_NEAR(parity_variance(diagonal_state({{{0, 0}, 1.0}}, 2), PhasePoint{}), 0.0, 1e-15);
  const DensityMatrix dicke = density_from_vector(dicke_vector(Spin::from_twice(1), Projection{-1}, FockCutoff{1}));
  EXPECT_NEAR(parity_variance(dicke, PhasePoint{}), 0.0, 1e-15);
}

TEST(Variance, GoldenPoint) {
  EXPECT_NEAR(parity_variance(pure(fig1_params()), PhasePoint{0.5, 0.5}), 1.0 - kFig1GoldenW * kFig1GoldenW, 1e-12);
}

TEST(Skew, PureStatesSatisfyConservation) {
  Rng rng(40);
  for (int t = 0; t < 200; ++t) {
    const CatParams p = rng.params(1 + t % 4);
    const PhasePoint x = rng.point(2.0);
    const DensityMatrix rho = pure(p);
    const double w = wigner_closed(p, x, kMean);
    EXPECT_NEAR(skew_information(rho, x) + w * w, 1.0, 1e-8);
  }
}

TEST(Skew, CommutingCaseVanishes) {
  const DensityMatrix mixed = diagonal_state({{{0, 1}, 0.5}, {{1, 0}, 0.5}}, 1);
  EXPECT_LE(std::abs(skew_information(mixed, PhasePoint{})), 1e-15);
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    const double a = rng.uniform(0, 1), b = rng.uniform(0, 1), c = rng.uniform(0, 1);
    const double z = a + b + c;
    const DensityMatrix d = diagonal_state({{{0, 0}, a / z}, {{2, 1}, b / z}, {{1, 3}, c / z}}, 3);
    EXPECT_LE(skew_information(d, PhasePoint{}), 1e-10);
  }
}

TEST(Skew, ChannelOutputAtOriginVanishes) {
  // Noise on mode 1 is phase covariant, so the output keeps the definite
  // total parity of the input and commutes with the kernel at the origin.
  for (int order : {24, 32}) {
    const DensityMatrix out = apply_channel_density(pure(fig1_params()), ChannelParams{.s = 1.0, .quad_order = order});
    EXPECT_LE(std::abs(skew_information(out, PhasePoint{})), 1e-10);
  }
}

TEST(Skew, ChannelOutputOffOriginMatchesOracle) {
  const PhasePoint x{0.3, Complex(0.0, 0.2)};
  double previous = NAN;
  for (int order : {24, 32}) {
    const DensityMatrix out = apply_channel_density(pure(fig1_params()), ChannelParams{.s = 1.0, .quad_order = order});
    const double i = skew_information(out, x);
    EXPECT_NEAR(i, kChannelSkew, 1e-9);
    EXPECT_NEAR(SkewEvaluator(out).wigner(x), kChannelW, 1e-10);
    if (!std::isnan(previous)) EXPECT_NEAR(i, previous, 1e-6);
    previous = i;
  }
}

TEST(Skew, DominatedByVarianceForMixedStates) {
  Rng rng(42);
  for (int t = 0; t < 12; ++t) {
    const CatParams p = rng.params(1 + t % 2);
    const DensityMatrix out = apply_channel_density(pure(p), ChannelParams{.s = rng.uniform(0.3, 2.0)});
    const SkewEvaluator eval(out);
    for (int k = 0; k < 5; ++k) {
      const PhasePoint x = rng.point(2.0);
      const double i = eval.skew(x);
      EXPECT_GE(i, -1e-9);
      EXPECT_LE(i, eval.variance(x) + 1e-8);
      const double w = eval.wigner(x);
      EXPECT_LE(i + w * w, 1.0 + 1e-8);
    }
  }
}

TEST(Skew, DualityAlongTheta1) {
  Rng rng(43);
  const double h = 1e-4;
  for (int t = 0; t < 10; ++t) {
    CatParams p = rng.params(1 + t % 3);
    p.theta1 = std::clamp(p.theta1, 0.1, kPi - 0.1);
    const PhasePoint x = rng.point(1.5);
    auto at = [&](double th) {
      CatParams q = p;
      q.theta1 = th;
      const double w = wigner_closed(q, x, kMean);
      return std::pair{skew_information(pure(q), x), w * w};
    };
    const auto [ip, wp] = at(p.theta1 + h);
    const auto [im, wm] = at(p.theta1 - h);
    const double di = (ip - im) / (2 * h), dw = (wp - wm) / (2 * h);
    EXPECT_LE(std::abs(di + dw), 1e-4 * std::max(1.0, std::abs(dw))) << di << " vs " << dw;
  }
}

TEST(Sweep, PureFastPathHasUnitBudgetAndAudits) {
  GridSpec g;
  g.axes = {{Quadrature::q1, -2, 2, 9}, {Quadrature::q2, -2, 2, 9}};
  const SymmetrySweep s = symmetry_sweep(pure(fig1_params()), g, true, 7);
  ASSERT_EQ(s.records.size(), 81u);
  EXPECT_EQ(s.audited.size(), 5u);
  for (const auto& r : s.records) {
    EXPECT_NEAR(r.budget, 1.0, 1e-8);
    EXPECT_EQ(r.w_squared, r.w * r.w);
  }
}

TEST(Sweep, AuditCatchesMixedStateFlaggedPure) {
  const DensityMatrix out = apply_channel_density(pure(fig1_params()), ChannelParams{.s = 1.0});
  GridSpec g;
  g.axes = {{Quadrature::q1, -1, 1, 5}};
  g.fixed = {0.0, 0.2, 0.3, 0.0};
  EXPECT_THROW(symmetry_sweep(out, g, true, 1), NumericalError);
}

TEST(Sweep, MixedSweepRespectsBudget) {
  const DensityMatrix out = apply_channel_density(pure(fig1_params()), ChannelParams{.s = 2.0});
  GridSpec g;
  g.axes = {{Quadrature::q1, -2, 2, 6}, {Quadrature::p2, -2, 2, 6}};
  for (const auto& r : symmetry_sweep(out, g, false).records) {
    EXPECT_LE(r.budget, 1.0 + 1e-8);
    EXPECT_GE(r.skew, 0.0);
  }
}

TEST(Sweep, SinglePointMatchesOperations) {
  const DensityMatrix rho = pure(fig1_params());
  const GridSpec g = GridSpec::single_point({0.5, 0.1, -0.2, 0.4});
  const SymmetrySweep s = symmetry_sweep(rho, g, false);
  ASSERT_EQ(s.records.size(), 1u);
  EXPECT_NEAR(s.records[0].skew, skew_information(rho, g.point(0)), 1e-14);
  EXPECT_NEAR(s.records[0].w, wigner_kernel_trace(rho, g.point(0), kMean), 1e-14);
}
