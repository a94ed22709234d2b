#include "spincat/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "spincat/channel.hpp"
#include "spincat/quadrature.hpp"
#include "spincat/serialize.hpp"
#include "spincat/skewinfo.hpp"
#include "spincat/sweep.hpp"

namespace spincat {

bool VerifyReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

constexpr double kPi = std::numbers::pi;

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  CatParams params(int twice_j, bool interior = true) {
    while (true) {
      CatParams p{Spin::from_twice(twice_j), theta(interior), theta(interior), uniform(0.0, 2.0 * kPi),
                  uniform(0.0, 2.0 * kPi)};
      try {
        cat_norm_general(p);
        return p;
      } catch (const DegenerateSuperposition&) {
      }
    }
  }

  Complex disc(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * kPi));
  }

  PhasePoint point(double radius) { return {disc(radius), disc(radius)}; }

  int twice_j(std::initializer_list<int> choices) {
    const auto i = std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng_);
    return *(choices.begin() + i);
  }

 private:
  double theta(bool interior) { return interior ? uniform(0.05, kPi - 0.05) : uniform(0.0, kPi); }

  std::mt19937_64 rng_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Pads a density matrix's support to (levels1 x support levels2), keeping
// the mode-1-major layout.
CMatrix padded(const DensityMatrix& rho, int levels1, int levels2) {
  const SupportBlock& s = rho.support();
  CMatrix out = CMatrix::Zero(levels1 * levels2, levels1 * levels2);
  for (int a = 0; a < s.levels1; ++a)
    for (int b = 0; b < s.levels2; ++b)
      for (int c = 0; c < s.levels1; ++c)
        for (int d = 0; d < s.levels2; ++d)
          out(a * levels2 + b, c * levels2 + d) = s.block(a * s.levels2 + b, c * s.levels2 + d);
  return out;
}

double max_entry_diff(const DensityMatrix& x, const DensityMatrix& y) {
  const int l1 = std::max(x.support().levels1, y.support().levels1);
  const int l2 = std::max(x.support().levels2, y.support().levels2);
  return (padded(x, l1, l2) - padded(y, l1, l2)).cwiseAbs().maxCoeff();
}

DensityMatrix cat_density(const CatParams& p) { return density_from_vector(cat_state(p)); }

class Suite {
 public:
  Suite(std::uint64_t seed, std::ostream* log) : draws_(seed), log_(log) {}

  void check(const std::string& module, const std::string& name, const std::function<std::string()>& body) {
    VerifyCheck c{module, name, false, {}};
    try {
      c.detail = body();
      c.passed = c.detail.rfind("FAIL", 0) != 0;
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    if (log_) *log_ << (c.passed ? "ok   " : "FAIL ") << module << ": " << name << " (" << c.detail << ")\n";
    report_.checks.push_back(std::move(c));
  }

  Draws& draws() { return draws_; }
  VerifyReport take() { return std::move(report_); }

 private:
  Draws draws_;
  std::ostream* log_;
  VerifyReport report_;
};

std::string verdict(bool ok, const std::string& detail) { return (ok ? "" : "FAIL: ") + detail; }

void fockspace_checks(Suite& s) {
  s.check("fockspace", "parity involution", [] {
    const auto p = parity_matrix(FockCutoff{12});
    const Eigen::VectorXd sq = p.diagonal().cwiseProduct(p.diagonal());
    return verdict(sq.isOnes(0.0), "Pi^2 = 1 exactly");
  });
  // "Central block": the leading levels whose displaced columns are fully
  // resolved inside the cutoff (resolved_levels).
  s.check("fockspace", "displacement composition", [&s] {
    const FockCutoff c{30};
    const double lim = std::sqrt(30.0) / 4.0;
    double worst = 0.0;
    int smallest = c.levels();
    for (int t = 0; t < 5; ++t) {
      const Complex a = s.draws().disc(lim);
      const int centre = resolved_levels(-a, c);
      smallest = std::min(smallest, centre);
      const CMatrix prod = displacement_matrix(a, c) * displacement_matrix(-a, c);
      worst = std::max(worst, (prod.topLeftCorner(centre, centre) -
                               CMatrix::Identity(centre, centre)).cwiseAbs().maxCoeff());
    }
    return verdict(worst <= 1e-8 && smallest > 0,
                   "max deviation " + fmt(worst) + " on blocks of >= " + std::to_string(smallest) + " levels");
  });
  s.check("fockspace", "kernel hermiticity", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      worst = std::max(worst, displaced_parity_kernel(s.draws().point(1.0), FockCutoff{8}).hermiticity_defect());
    }
    return verdict(worst <= 1e-12, "max defect " + fmt(worst));
  });
  // The two-mode kernel is a Kronecker product, so its square is the product
  // of the single-mode squares; each factor is checked on its central block.
  s.check("fockspace", "kernel involution on central block", [&s] {
    const FockCutoff c{60};
    const int l = c.levels();
    const double lim = std::sqrt(40.0) / 4.0;
    double worst = 0.0;
    int smallest = l;
    for (int t = 0; t < 6; ++t) {
      const Complex a = s.draws().disc(lim);
      const int centre = resolved_levels(2.0 * a, c);
      smallest = std::min(smallest, centre);
      const CMatrix k = displaced_parity_block(a, l, l);
      const CMatrix sq = k * k;
      worst = std::max(worst, (sq.topLeftCorner(centre, centre) -
                               CMatrix::Identity(centre, centre)).cwiseAbs().maxCoeff());
    }
    return verdict(worst <= 1e-8 && smallest > 0,
                   "max |Delta^2 - 1| " + fmt(worst) + " on blocks of >= " + std::to_string(smallest) + " levels");
  });
  s.check("fockspace", "kernel square from resolved columns", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      const KernelFactor f = kernel_factor(s.draws().disc(3.0), 12);
      worst = std::max(worst, (f.columns.adjoint() * f.columns - CMatrix::Identity(12, 12)).cwiseAbs().maxCoeff());
    }
    return verdict(worst <= 1e-12, "max |Delta^2 - 1| " + fmt(worst));
  });
  s.check("fockspace", "hermitian sqrt reconstruction", [&s] {
    const DensityMatrix rho = apply_channel_density(cat_density(s.draws().params(1)), ChannelParams{.s = 0.5});
    const TwoModeOperator r = hermitian_sqrt(rho);
    const double err = (r.matrix() * r.matrix() - rho.matrix()).cwiseAbs().maxCoeff();
    const DensityMatrix pure = cat_density(s.draws().params(2));
    const double proj = (hermitian_sqrt(pure).matrix() - pure.matrix()).cwiseAbs().maxCoeff();
    return verdict(err <= 1e-9 && proj <= 1e-9 && r.hermiticity_defect() <= 1e-12,
                   "square error " + fmt(err) + ", projector error " + fmt(proj));
  });
}

void states_checks(Suite& s) {
  s.check("states", "shell support", [&s] {
    double worst = 0.0;
    for (int tj = 1; tj <= 4; ++tj) {
      const StateVector v = cat_state(s.draws().params(tj), FockCutoff{tj + 3});
      for (int n1 = 0; n1 < v.space.levels1(); ++n1)
        for (int n2 = 0; n2 < v.space.levels2(); ++n2)
          if (n1 + n2 != tj) worst = std::max(worst, std::abs(v.amplitudes(v.space.index(n1, n2))));
    }
    return verdict(worst <= 1e-15, "max off-shell amplitude " + fmt(worst));
  });
  s.check("states", "normalization factor vs vector norm", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const CatParams p = s.draws().params(s.draws().twice_j({1, 2, 3, 4, 6, 8}), false);
      const FockCutoff c{p.j.twice};
      const CVector sum = spin_coherent_vector(p.j, p.theta1, p.phi1, c).amplitudes +
                          spin_coherent_vector(p.j, p.theta2, p.phi2, c).amplitudes;
      worst = std::max(worst, std::abs(cat_norm_general(p) - 1.0 / sum.norm()));
    }
    return verdict(worst <= 1e-10, "max deviation " + fmt(worst));
  });
  s.check("states", "spin-1/2 reduction of the normalization", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const CatParams p = s.draws().params(1, false);
      worst = std::max(worst, std::abs(cat_norm_general(p) - cat_norm_half(p)));
    }
    return verdict(worst <= 1e-12, "max deviation " + fmt(worst));
  });
  s.check("states", "Jz expectation of coherent states", [&s] {
    double worst = 0.0;
    for (int tj = 1; tj <= 6; ++tj) {
      const double theta = s.draws().uniform(0.0, kPi);
      const StateVector v = spin_coherent_vector(Spin::from_twice(tj), theta, s.draws().uniform(0.0, 2 * kPi),
                                                 FockCutoff{tj});
      double jz = 0.0;
      for (int n1 = 0; n1 <= tj; ++n1)
        for (int n2 = 0; n2 <= tj; ++n2) jz += 0.5 * (n1 - n2) * std::norm(v.amplitudes(v.space.index(n1, n2)));
      worst = std::max(worst, std::abs(jz + 0.5 * tj * std::cos(theta)));
    }
    return verdict(worst <= 1e-10, "max deviation " + fmt(worst));
  });
}

void wigner_checks(Suite& s) {
  s.check("wigner", "boundedness", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const CatParams p = s.draws().params(s.draws().twice_j({1, 2, 3, 4}));
      worst = std::max(worst, std::abs(wigner_kernel_trace(cat_density(p), s.draws().point(2.0),
                                                           WignerConvention::KernelMean)));
    }
    return verdict(worst <= 1.0 + 1e-9, "max |W| " + fmt(worst));
  });
  s.check("wigner", "closed form vs kernel trace", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const CatParams p = s.draws().params(s.draws().twice_j({1, 2, 3, 4}));
      const PhasePoint x = s.draws().point(2.0);
      worst = std::max(worst, std::abs(wigner_closed(p, x, WignerConvention::KernelMean) -
                                       wigner_kernel_trace(cat_density(p), x, WignerConvention::KernelMean)));
    }
    return verdict(worst <= 1e-5, "max deviation " + fmt(worst));
  });
  s.check("wigner", "spin-1/2 reduction", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const CatParams p = s.draws().params(1);
      const PhasePoint x = s.draws().point(2.0);
      worst = std::max(worst, std::abs(wigner_closed_general(p, x, WignerConvention::KernelMean) -
                                       wigner_closed_half(p, x, WignerConvention::KernelMean)));
    }
    return verdict(worst <= 1e-10, "max deviation " + fmt(worst));
  });
  s.check("wigner", "normalization in the density convention", [&s] {
    // W is exp(-|x|^2) times a polynomial in the four quadratures, so an
    // order-8 Gauss-Hermite product rule integrates it exactly.
    const GaussHermite gh = gauss_hermite(8);
    double worst = 0.0;
    for (int t = 0; t < 3; ++t) {
      const CatParams p = s.draws().params(1, false);
      double total = 0.0;
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
          for (int c = 0; c < 8; ++c)
            for (int d = 0; d < 8; ++d) {
              const double q1 = gh.nodes[a], p1 = gh.nodes[b], q2 = gh.nodes[c], p2 = gh.nodes[d];
              const double r2 = q1 * q1 + p1 * p1 + q2 * q2 + p2 * p2;
              total += gh.weights[a] * gh.weights[b] * gh.weights[c] * gh.weights[d] * std::exp(r2) *
                       wigner_closed(p, PhasePoint::from_quadratures(q1, p1, q2, p2),
                                     WignerConvention::PaperPrefactor);
            }
      worst = std::max(worst, std::abs(total - 1.0));
    }
    return verdict(worst <= 1e-3, "max |integral - 1| " + fmt(worst));
  });
}

void skew_checks(Suite& s) {
  s.check("skewinfo", "conservation for pure states", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const CatParams p = s.draws().params(s.draws().twice_j({1, 2, 3, 4}), false);
      const SymmetryRecord r = SkewEvaluator(cat_density(p)).evaluate(s.draws().point(2.0));
      worst = std::max(worst, std::abs(r.budget - 1.0));
    }
    return verdict(worst <= 1e-8, "max |I + W^2 - 1| " + fmt(worst));
  });
  s.check("skewinfo", "domination for mixed states", [&s] {
    double worst_low = 0.0, worst_high = -1.0;
    for (int t = 0; t < 4; ++t) {
      const CatParams p = s.draws().params(s.draws().twice_j({1, 2}));
      const SkewEvaluator ev(apply_channel_density(cat_density(p), ChannelParams{.s = 1.0}));
      for (int k = 0; k < 10; ++k) {
        const PhasePoint x = s.draws().point(2.0);
        const double i = ev.skew(x), var = ev.variance(x);
        worst_low = std::min(worst_low, i);
        worst_high = std::max(worst_high, i - var);
      }
    }
    return verdict(worst_low >= -1e-9 && worst_high <= 1e-8,
                   "min I " + fmt(worst_low) + ", max I - Var " + fmt(worst_high));
  });
  s.check("skewinfo", "duality along theta1", [&s] {
    double worst = 0.0;
    constexpr double h = 1e-4;
    for (int t = 0; t < 10; ++t) {
      CatParams p = s.draws().params(s.draws().twice_j({1, 2, 3}));
      p.theta1 = std::clamp(p.theta1, 0.1, kPi - 0.1);
      const PhasePoint x = s.draws().point(1.5);
      auto at = [&](double th) {
        CatParams q = p;
        q.theta1 = th;
        return SkewEvaluator(cat_density(q)).evaluate(x);
      };
      const SymmetryRecord up = at(p.theta1 + h), dn = at(p.theta1 - h);
      const double di = (up.skew - dn.skew) / (2 * h);
      const double dw2 = (up.w_squared - dn.w_squared) / (2 * h);
      const double scale = std::max({std::abs(di), std::abs(dw2), 1e-3});
      worst = std::max(worst, std::abs(di + dw2) / scale);
    }
    return verdict(worst <= 1e-4, "max relative mismatch " + fmt(worst));
  });
  s.check("skewinfo", "commuting case", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      const TwoModeSpace sp = TwoModeSpace::uniform(FockCutoff{3});
      Eigen::VectorXd d(sp.dim());
      for (int i = 0; i < sp.dim(); ++i) d(i) = s.draws().uniform(0.0, 1.0);
      d /= d.sum();
      const DensityMatrix rho = DensityMatrix::from_matrix(sp, d.cast<Complex>().asDiagonal());
      worst = std::max(worst, skew_information(rho, PhasePoint{}));
    }
    return verdict(worst <= 1e-10, "max I " + fmt(worst));
  });
}

void channel_checks(Suite& s) {
  s.check("channel", "trace, hermiticity and purity", [&s] {
    double worst_trace = 0.0, worst_herm = 0.0, worst_gap = 1.0;
    for (double sv : {0.5, 1.0, 2.0}) {
      const DensityMatrix in = cat_density(s.draws().params(s.draws().twice_j({1, 2})));
      const ChannelOutput out = apply_channel_density_detailed(in, ChannelParams{.s = sv});
      worst_trace = std::max(worst_trace, std::abs(out.raw_trace - 1.0));
      worst_herm = std::max(worst_herm, out.rho.as_operator().hermiticity_defect());
      worst_gap = std::min(worst_gap, in.purity() - out.rho.purity());
    }
    return verdict(worst_trace <= 1e-8 && worst_herm <= 1e-12 && worst_gap > 1e-10,
                   "raw trace drift " + fmt(worst_trace) + ", hermiticity " + fmt(worst_herm) +
                       ", min purity drop " + fmt(worst_gap));
  });
  s.check("channel", "three-route agreement", [&s] {
    double worst = 0.0;
    for (int tj : {1, 2})
      for (double sv : {0.5, 1.0, 2.0}) {
        const CatParams p = s.draws().params(tj);
        const ChannelParams ch{.s = sv};
        const DensityMatrix out = apply_channel_density(cat_density(p), ch);
        for (int k = 0; k < 10; ++k) {
          const PhasePoint x = s.draws().point(2.0);
          const double a = channel_wigner_convolution(p, ch, x, WignerConvention::KernelMean);
          const double b = channel_wigner_quadrature(p, ch, x, WignerConvention::KernelMean);
          const double c = wigner_kernel_trace(out, x, WignerConvention::KernelMean);
          worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
        }
      }
    return verdict(worst <= 1e-5, "max pairwise deviation " + fmt(worst));
  });
  s.check("channel", "budget inequality after the channel", [&s] {
    double worst = -1.0, strict_worst = -1.0;
    for (double sv : {1.0, 2.0}) {
      const SkewEvaluator ev(apply_channel_density(cat_density(s.draws().params(1)), ChannelParams{.s = sv}));
      for (int k = 0; k < 5; ++k) {
        const double b = ev.evaluate(s.draws().point(2.0)).budget;
        worst = std::max(worst, b - 1.0);
        strict_worst = std::max(strict_worst, b - (1.0 - 1e-6));
      }
    }
    return verdict(worst <= 1e-8 && strict_worst < 0.0, "max budget - 1 " + fmt(worst));
  });
  s.check("channel", "semigroup", [&s] {
    double worst = 0.0;
    for (int t = 0; t < 5; ++t) {
      const DensityMatrix in = cat_density(s.draws().params(s.draws().twice_j({1, 2})));
      const double s1 = s.draws().uniform(0.2, 0.6), s2 = s.draws().uniform(0.2, 0.6);
      const DensityMatrix twice =
          apply_channel_density(apply_channel_density(in, ChannelParams{.s = s1}), ChannelParams{.s = s2});
      const DensityMatrix once = apply_channel_density(in, ChannelParams{.s = s1 + s2});
      worst = std::max(worst, max_entry_diff(twice, once));
    }
    return verdict(worst <= 1e-6, "max entry deviation " + fmt(worst));
  });
  s.check("channel", "identity limit", [&s] {
    const CatParams p = s.draws().params(2);
    const ChannelParams ch{.s = 1e-6};
    const DensityMatrix in = cat_density(p);
    const double dens = max_entry_diff(apply_channel_density(in, ch), in);
    double wig = 0.0;
    for (int k = 0; k < 5; ++k) {
      const PhasePoint x = s.draws().point(2.0);
      wig = std::max(wig, std::abs(channel_wigner_convolution(p, ch, x, WignerConvention::KernelMean) -
                                   wigner_closed(p, x, WignerConvention::KernelMean)));
    }
    return verdict(dens <= 1e-5 && wig <= 1e-5, "density " + fmt(dens) + ", Wigner " + fmt(wig));
  });
  s.check("channel", "measure normalization", [] {
    const double v = integrate_gaussian_measure(1.0, 24, [](Complex) { return Complex(1.0); }).real();
    return verdict(std::abs(v - 1.0) <= 1e-12, "integral - 1 = " + fmt(v - 1.0));
  });
}

void sweep_checks(Suite& s) {
  s.check("sweep", "CSV round trip", [&s] {
    SweepConfig c = preset_config("fig2-q1");
    c.grid.axes[0].count = 21;
    c.seed = 7;
    const SweepResult r = run_sweep(c);
    std::stringstream ss;
    write_csv(r, ss);
    const SweepResult back = read_csv(ss);
    double worst = 0.0;
    for (std::size_t i = 0; i < back.records.size(); ++i) {
      const auto& b = back.records[i];
      worst = std::max(worst, std::abs(b.budget - (b.skew + b.w * b.w)));
    }
    const bool meta_ok = back.meta == r.meta && back.records.size() == r.records.size();
    (void)s;
    return verdict(meta_ok && worst <= 1e-15, "budget recompute deviation " + fmt(worst));
  });
  s.check("sweep", "determinism", [] {
    const auto render = [] {
      SweepConfig c = preset_config("fig1a");
      c.grid.axes[0].count = c.grid.axes[1].count = 11;
      std::stringstream ss;
      write_csv(run_sweep(c), ss);
      return ss.str();
    };
    return verdict(render() == render(), "two renders compared byte for byte");
  });
}

}  // namespace

VerifyReport run_verify(std::uint64_t seed, std::ostream* log) {
  Suite suite(seed, log);
  fockspace_checks(suite);
  states_checks(suite);
  wigner_checks(suite);
  skew_checks(suite);
  channel_checks(suite);
  sweep_checks(suite);
  return suite.take();
}

}  // namespace spincat
