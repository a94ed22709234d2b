#include <benchmark/benchmark.h>

#include <numbers>

#include "spincat/channel.hpp"
#include "spincat/fockspace.hpp"
#include "spincat/skewinfo.hpp"
#include "spincat/states.hpp"
#include "spincat/sweep.hpp"
#include "spincat/wigner.hpp"

using namespace spincat;

namespace {

constexpr double kPi = std::numbers::pi;

CatParams cat(int twice_j) { return {Spin::from_twice(twice_j), kPi / 3.0, kPi / 2.0, 0.0, 2.0 * kPi}; }

const PhasePoint kPoint = PhasePoint::from_quadratures(0.7, -0.3, 0.4, 0.9);

void BM_DisplacementBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(displacement_block(Complex(1.2, -0.4), n, n));
}
BENCHMARK(BM_DisplacementBlock)->Arg(8)->Arg(32)->Arg(128);

void BM_KernelFactor(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_factor(Complex(r, 0.0), 8));
}
BENCHMARK(BM_KernelFactor)->Arg(1)->Arg(4)->Arg(10);

void BM_WignerClosed(benchmark::State& state) {
  const CatParams p = cat(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_closed(p, kPoint, WignerConvention::KernelMean));
}
BENCHMARK(BM_WignerClosed)->Arg(1)->Arg(2)->Arg(8);

void BM_WignerKernelTrace(benchmark::State& state) {
  const DensityMatrix rho = density_from_vector(cat_state(cat(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_kernel_trace(rho, kPoint, WignerConvention::KernelMean));
}
BENCHMARK(BM_WignerKernelTrace)->Arg(1)->Arg(2)->Arg(8)->Arg(20);

void BM_SkewPure(benchmark::State& state) {
  const DensityMatrix rho = density_from_vector(cat_state(cat(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(skew_information(rho, kPoint));
}
BENCHMARK(BM_SkewPure)->Arg(1)->Arg(4);

void BM_ChannelDensity(benchmark::State& state) {
  const DensityMatrix rho = density_from_vector(cat_state(cat(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(apply_channel_density(rho, ChannelParams{.s = 1.0}));
}
BENCHMARK(BM_ChannelDensity)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ChannelSkew(benchmark::State& state) {
  const SkewEvaluator eval(apply_channel_density(density_from_vector(cat_state(cat(1))), ChannelParams{.s = 1.0}));
  for (auto _ : state) benchmark::DoNotOptimize(eval.skew(kPoint));
}
BENCHMARK(BM_ChannelSkew)->Unit(benchmark::kMicrosecond);

void BM_ChannelConvolution(benchmark::State& state) {
  const CatParams p = cat(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(channel_wigner_convolution(p, ChannelParams{.s = 1.0}, kPoint, WignerConvention::KernelMean));
}
BENCHMARK(BM_ChannelConvolution)->Arg(1)->Arg(4);

void BM_PresetSurface(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_preset("fig1a"));
}
BENCHMARK(BM_PresetSurface)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
