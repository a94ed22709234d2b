#include "spincat/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spincat/errors.hpp"
#include "spincat/expression.hpp"
#include "spincat/serialize.hpp"
#include "spincat/sweep.hpp"
#include "spincat/verify.hpp"

namespace spincat {

namespace {

Evaluator parse_evaluator(const std::string& name) {
  if (name == "closed") return Evaluator::ClosedForm;
  if (name == "kernel") return Evaluator::KernelTrace;
  return Evaluator::Printed;
}

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Output {
  std::string path = "-";
  std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.path, "Output file, '-' for stdout");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void emit(const SweepResult& r, const Output& o, std::ostream& out) {
  std::ostringstream buf;
  if (o.format == "json") write_json(r, buf);
  else write_csv(r, buf);
  if (o.path == "-") {
    out << buf.str();
    return;
  }
  std::ofstream f(o.path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + o.path + "' for writing");
  f << buf.str();
  if (!f) throw std::runtime_error("write to '" + o.path + "' failed");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

struct SweepFlags {
  std::string j = "1/2";
  std::string theta1 = "pi", theta2 = "0", phi1 = "0", phi2 = "2*pi";
  std::string axes = "q1,q2";
  std::string range = "-2,2";
  int count = kSurfaceCount;
  std::string fixed;
  double channel_s = 0.0;
  int quad_order = 24;
  std::string evaluator = "closed";
  std::string convention = "kernel-mean";
  std::uint64_t seed = 0;
};

SweepConfig build_config(const SweepFlags& f) {
  SweepConfig c;
  c.params = {Spin::parse(f.j), evaluate_expression(f.theta1), evaluate_expression(f.theta2),
              evaluate_expression(f.phi1), evaluate_expression(f.phi2)};
  const auto range = split(f.range, ',');
  if (range.size() != 2) throw InvalidArgument("--range expects MIN,MAX");
  const double lo = evaluate_expression(range[0]), hi = evaluate_expression(range[1]);
  for (const auto& name : split(f.axes, ',')) c.grid.axes.push_back({parse_quadrature(name), lo, hi, f.count});
  if (!f.fixed.empty()) {
    for (const auto& kv : split(f.fixed, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw InvalidArgument("--fixed expects NAME=VALUE[,NAME=VALUE...]");
      const Quadrature q = parse_quadrature(kv.substr(0, eq));
      for (const auto& a : c.grid.axes)
        if (a.variable == q) throw InvalidArgument("--fixed assigns swept quadrature " + kv.substr(0, eq));
      c.grid.fixed[static_cast<int>(q)] = evaluate_expression(kv.substr(eq + 1));
    }
  }
  if (f.channel_s > 0.0) c.channel = ChannelParams{.s = f.channel_s, .quad_order = f.quad_order};
  c.evaluator = parse_evaluator(f.evaluator);
  c.convention = f.convention == "paper" ? WignerConvention::PaperPrefactor : WignerConvention::KernelMean;
  c.seed = f.seed;
  c.grid.validate();
  return c;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-j cat states: Wigner function, skew information and Gaussian noise"};
  app.require_subcommand(1);

  auto* preset = app.add_subcommand("preset", "Run a figure preset");
  std::string preset_name;
  std::string preset_j;
  double preset_s = 0.0;
  bool list = false;
  Output preset_out;
  preset->add_option("name", preset_name, "Preset name");
  preset->add_flag("--list", list, "List preset names");
  preset->add_option("--j", preset_j, "Spin for the fig2/fig5 families, e.g. 3/2");
  preset->add_option("--s", preset_s, "Noise strength for the fig4 family");
  std::string preset_evaluator = "closed";
  preset->add_option("--evaluator", preset_evaluator, "W evaluator")
      ->check(CLI::IsMember({"closed", "kernel", "printed"}));
  add_output_flags(preset, preset_out);

  auto* sweep = app.add_subcommand("sweep", "Evaluate W, W^2, I over a grid");
  SweepFlags sf;
  Output sweep_out;
  sweep->add_option("--j", sf.j, "Spin as a fraction, e.g. 1/2");
  sweep->add_option("--theta1", sf.theta1, "Polar angle (expression, e.g. pi/3)");
  sweep->add_option("--theta2", sf.theta2, "Polar angle");
  sweep->add_option("--phi1", sf.phi1, "Azimuth");
  sweep->add_option("--phi2", sf.phi2, "Azimuth");
  sweep->add_option("--axes", sf.axes, "One or two of q1,p1,q2,p2");
  sweep->add_option("--range", sf.range, "MIN,MAX for every swept axis");
  sweep->add_option("--count", sf.count, "Points per swept axis");
  sweep->add_option("--fixed", sf.fixed, "Values of unswept quadratures, e.g. p1=0.5,q2=0");
  sweep->add_option("--channel-s", sf.channel_s, "Gaussian noise strength on mode 1 (0 = none)");
  sweep->add_option("--quad-order", sf.quad_order, "Gauss-Hermite order of the channel");
  sweep->add_option("--evaluator", sf.evaluator, "W evaluator")
      ->check(CLI::IsMember({"closed", "kernel", "printed"}));
  sweep->add_option("--convention", sf.convention, "W normalization")
      ->check(CLI::IsMember({"kernel-mean", "paper"}));
  sweep->add_option("--seed", sf.seed, "Seed for the skew audit points");
  add_output_flags(sweep, sweep_out);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  std::uint64_t verify_seed = 0;
  bool quiet = false;
  verify->add_option("--seed", verify_seed, "Seed for randomized draws");
  verify->add_flag("--quiet", quiet, "Only print the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*preset) {
      if (list) {
        for (const auto& n : preset_names()) out << n << '\n';
        return kOk;
      }
      if (preset_name.empty()) {
        err << "preset: a preset name is required (see --list)\n";
        return kUsage;
      }
      PresetOptions opts;
      if (!preset_j.empty()) opts.j = Spin::parse(preset_j);
      if (preset_s > 0.0) opts.s = preset_s;
      SweepConfig config = preset_config(preset_name, opts);
      config.evaluator = parse_evaluator(preset_evaluator);
      emit(run_sweep(config), preset_out, out);
      return kOk;
    }
    if (*sweep) {
      emit(run_sweep(build_config(sf)), sweep_out, out);
      return kOk;
    }
    if (*verify) {
      const VerifyReport report = run_verify(verify_seed, quiet ? nullptr : &out);
      std::size_t failed = 0;
      for (const auto& c : report.checks) failed += c.passed ? 0 : 1;
      out << report.checks.size() - failed << "/" << report.checks.size() << " checks passed (seed "
          << verify_seed << ")\n";
      return failed == 0 ? kOk : kViolation;
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical contract violated: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kViolation;
  }
  return kUsage;
}

}  // namespace spincat
