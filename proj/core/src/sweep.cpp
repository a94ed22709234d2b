#include "spincat/sweep.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "spincat/errors.hpp"
#include "spincat/numeric.hpp"
#include "spincat/skewinfo.hpp"

namespace spincat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

nlohmann::ordered_json params_to_json(const CatParams& p) {
  return {{"j", p.j.to_string()},
          {"theta1", p.theta1},
          {"theta2", p.theta2},
          {"phi1", p.phi1},
          {"phi2", p.phi2}};
}

nlohmann::ordered_json channel_to_json(const std::optional<ChannelParams>& ch) {
  if (!ch) return nullptr;
  return {{"s", ch->s},
          {"quad_order", ch->quad_order},
          {"quad_radius_sigmas", ch->quad_radius_sigmas},
          {"both_modes", ch->both_modes}};
}

double evaluate_w(const SweepConfig& c, const PhasePoint& p) {
  if (c.channel) {
    switch (c.evaluator) {
      case Evaluator::ClosedForm:
        return channel_wigner_convolution(c.params, *c.channel, p, WignerConvention::KernelMean);
      case Evaluator::Printed:
        return channel_wigner_printed(c.params, *c.channel, p, WignerConvention::KernelMean);
      case Evaluator::KernelTrace: break;
    }
  } else {
    switch (c.evaluator) {
      case Evaluator::ClosedForm: return wigner_closed(c.params, p, WignerConvention::KernelMean);
      case Evaluator::Printed: return wigner_printed(c.params, p, WignerConvention::KernelMean);
      case Evaluator::KernelTrace: break;
    }
  }
  throw std::logic_error("evaluate_w: kernel evaluator is handled by the density route");
}

GridSpec surface(Quadrature x, Quadrature y) {
  GridSpec g;
  g.axes = {{x, -2.0, 2.0, kSurfaceCount}, {y, -2.0, 2.0, kSurfaceCount}};
  return g;
}

GridSpec slice(Quadrature x) {
  GridSpec g;
  g.axes = {{x, -10.0, 10.0, kSliceCount}};
  return g;
}

CatParams fig1_params() { return {Spin::from_twice(1), kPi, 0.0, 0.0, 2.0 * kPi}; }

CatParams fig2_params(Spin j) { return {j, kPi / 3.0, kPi / 2.0, 0.0, 2.0 * kPi}; }

// Panel letter -> slice plane for the 2x4 surface figures. Panels a-d and
// e-h share the same four planes.
GridSpec fig1_plane(char panel) {
  switch ((panel - 'a') % 4) {
    case 0: return surface(Quadrature::q1, Quadrature::q2);  // p1 = p2 = 0
    case 1: return surface(Quadrature::p1, Quadrature::p2);  // q1 = q2 = 0
    case 2: return surface(Quadrature::q1, Quadrature::p2);  // p1 = q2 = 0
    default: return surface(Quadrature::p1, Quadrature::q2);  // q1 = p2 = 0
  }
}

constexpr Quadrature kSliceOrder[] = {Quadrature::q1, Quadrature::p1, Quadrature::q2, Quadrature::p2};

[[noreturn]] void unknown_preset(std::string_view name) {
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

}  // namespace

SweepResult run_sweep(const SweepConfig& c) {
  c.params.validate();
  c.grid.validate();
  if (c.channel) c.channel->validate();

  const DensityMatrix pure = density_from_vector(cat_state(c.params));
  SweepResult result;
  result.meta = {{"preset", c.preset},
                 {"params", params_to_json(c.params)},
                 {"channel", channel_to_json(c.channel)},
                 {"evaluator", std::string(to_string(c.evaluator))},
                 {"convention", std::string(to_string(c.convention))},
                 {"grid", grid_to_json(c.grid)},
                 {"seed", c.seed},
                 {"state_cutoff", c.params.j.twice}};
  result.records.resize(c.grid.size());
  const double factor = convention_factor(c.convention);
  const bool printed = c.evaluator == Evaluator::Printed;
  std::vector<double> w_km(c.grid.size());

  nlohmann::ordered_json diag;
  if (!c.channel) {
    const SymmetrySweep sym = symmetry_sweep(pure, c.grid, true, c.seed);
    parallel_for(c.grid.size(), [&](std::size_t i) {
      const SymmetryRecord& r = sym.records[i];
      w_km[i] = c.evaluator == Evaluator::KernelTrace ? r.w : evaluate_w(c, r.point);
      result.records[i].skew = printed ? kNaN : r.skew;
    });
    diag["skew_route"] = "pure: 1 - W^2 with commutator audit";
    diag["audited"] = sym.audited;
    diag["clamped"] = sym.clamped;
  } else {
    const ChannelOutput out = apply_channel_density_detailed(pure, *c.channel);
    const SkewEvaluator eval(out.rho);
    std::vector<char> clamped(c.grid.size(), 0);
    parallel_for(c.grid.size(), [&](std::size_t i) {
      const PhasePoint p = c.grid.point(i);
      bool cl = false;
      const SymmetryRecord r = eval.evaluate(p, &cl);
      clamped[i] = cl;
      w_km[i] = c.evaluator == Evaluator::KernelTrace ? r.w : evaluate_w(c, p);
      result.records[i].skew = printed ? kNaN : r.skew;
    });
    std::size_t n_clamped = 0;
    for (char x : clamped) n_clamped += x ? 1 : 0;
    diag["skew_route"] = "mixed: commutator on the channel output";
    diag["channel_mode1_levels"] = out.mode1_levels;
    diag["channel_raw_trace"] = out.raw_trace;
    diag["clamped"] = n_clamped;
  }
  result.meta["diagnostics"] = diag;

  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto x = c.grid.coordinates(i);
    SweepRecord& r = result.records[i];
    r.q1 = x[0];
    r.p1 = x[1];
    r.q2 = x[2];
    r.p2 = x[3];
    r.w = factor * w_km[i];
    r.w2 = r.w * r.w;
    r.budget = printed ? kNaN : r.skew + w_km[i] * w_km[i];
  }
  return result;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (char p = 'a'; p <= 'h'; ++p) names.push_back(std::string("fig1") + p);
  for (Quadrature q : kSliceOrder) names.push_back("fig2-" + std::string(to_string(q)));
  for (char p = 'a'; p <= 'h'; ++p) names.push_back(std::string("fig3") + p);
  for (Quadrature q : kSliceOrder) names.push_back("fig4-" + std::string(to_string(q)));
  for (char p = 'a'; p <= 'h'; ++p) names.push_back(std::string("fig5") + p);
  names.push_back("origin-check");
  return names;
}

SweepConfig preset_config(std::string_view name, const PresetOptions& options) {
  SweepConfig c;
  c.preset = std::string(name);
  const Spin j = options.j.value_or(Spin::from_twice(1));
  if (name == "origin-check") {
    c.params = fig1_params();
    c.grid = GridSpec::single_point({0.0, 0.0, 0.0, 0.0});
    return c;
  }
  if (name.size() == 5 && (name.substr(0, 4) == "fig1" || name.substr(0, 4) == "fig3")) {
    const char panel = name[4];
    if (panel < 'a' || panel > 'h') unknown_preset(name);
    c.params = fig1_params();
    c.grid = fig1_plane(panel);
    if (name[3] == '3') c.channel = ChannelParams{.s = 1.0};
    return c;
  }
  if (name.size() == 5 && name.substr(0, 4) == "fig5") {
    const char panel = name[4];
    if (panel < 'a' || panel > 'h') unknown_preset(name);
    c.params = fig2_params(j);
    c.grid = slice(kSliceOrder[(panel - 'a') % 4]);
    c.channel = ChannelParams{.s = panel < 'e' ? 1.0 : 2.0};
    return c;
  }
  if (name.size() == 7 && (name.substr(0, 5) == "fig2-" || name.substr(0, 5) == "fig4-")) {
    const Quadrature q = parse_quadrature(name.substr(5));
    c.grid = slice(q);
    if (name[3] == '2') {
      c.params = fig2_params(j);
    } else {
      c.params = fig1_params();
      c.channel = ChannelParams{.s = options.s.value_or(1.0)};
    }
    return c;
  }
  unknown_preset(name);
}

SweepResult run_preset(std::string_view name, const PresetOptions& options) {
  return run_sweep(preset_config(name, options));
}

}  // namespace spincat
