#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spincat/channel.hpp"
#include "spincat/grid.hpp"
#include "spincat/states.hpp"
#include "spincat/wigner.hpp"

namespace spincat {

struct SweepConfig {
  std::string preset;  // empty for ad-hoc sweeps
  CatParams params;
  std::optional<ChannelParams> channel;
  GridSpec grid;
  Evaluator evaluator = Evaluator::ClosedForm;
  WignerConvention convention = WignerConvention::KernelMean;
  std::uint64_t seed = 0;  // drives the skew audit points
};

/// Evaluates W with the chosen evaluator and I from the density matrix.
///
/// Without a channel the state is pure: I = 1 - W^2 with W from the kernel
/// trace, audited against the commutator at five seeded points. With a
/// channel, I comes from the commutator on the Kraus-quadrature output.
/// W2 is the square of the W column; budget is I + W^2 with W in the
/// kernel-mean convention. The printed evaluator leaves I and budget NaN,
/// since its W is not the mean of any state.
SweepResult run_sweep(const SweepConfig& config);

struct PresetOptions {
  std::optional<Spin> j;    // fig2 and fig5 families (default 1/2)
  std::optional<double> s;  // fig4 family (default 1)
};

std::vector<std::string> preset_names();
SweepConfig preset_config(std::string_view name, const PresetOptions& options = {});
SweepResult run_preset(std::string_view name, const PresetOptions& options = {});

/// 2-D figure surfaces use this many points per axis over [-2, 2]^2;
/// 1-D slices use kSliceCount points over [-10, 10].
inline constexpr int kSurfaceCount = 101;
inline constexpr int kSliceCount = 201;

}  // namespace spincat
