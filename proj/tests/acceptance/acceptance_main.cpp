// Release gate: every numbered check below must print PASS.
// Exit code equals the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "scattopo/design.hpp"
#include "scattopo/filter_bank.hpp"
#include "scattopo/generators.hpp"
#include "scattopo/scattering.hpp"
#include "scattopo/topology.hpp"

using namespace scattopo;

namespace {

struct Gate {
  bool ok = true;
  std::vector<std::string> details;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      details.push_back(what);
    }
  }
  void expect_le(double value, double bound, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s (got %.6g, bound %.6g)", what.c_str(), value, bound);
    expect(value <= bound, buf);
  }
  void expect_ge(double value, double bound, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s (got %.6g, bound %.6g)", what.c_str(), value, bound);
    expect(value >= bound, buf);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Unit tiling of both filter families at production size, time-boxed.
void check_frame_identity(Gate& g) {
  const Grid grid(1 << 14, 1.0);
  for (const WhParams& p : {WhParams{1.0, 1.0}, WhParams{0.5, 1.0}, WhParams{1.5, 1.0}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const FrameReport rep = verify_parseval(build_wh_bank(p, grid));
    const double dt = seconds_since(t0);
    char tag[96];
    std::snprintf(tag, sizeof(tag), "band-shifted R=%.2g", p.R);
    g.expect_le(rep.max_deviation, 1e-9, std::string(tag) + " deviation");
    g.expect_le(dt, 1.0, std::string(tag) + " runtime");
  }
  for (double r : {std::sqrt(2.0), 2.0, 3.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const FrameReport rep = verify_parseval(build_wavelet_bank(WaveletParams{r}, grid));
    const double dt = seconds_since(t0);
    char tag[96];
    std::snprintf(tag, sizeof(tag), "dilation r=%.5g", r);
    g.expect_le(rep.max_deviation, 1e-9, std::string(tag) + " deviation");
    g.expect_le(dt, 1.0, std::string(tag) + " runtime");
  }
}

// 2. The two reference decay constants, exact.
void check_decay_constants(Gate& g) {
  for (double delta : {0.25, 1.0, 3.0}) {
    g.expect(decay_factor_wh(delta, delta) == 1.5, "a(delta, delta) != 3/2 exactly");
  }
  g.expect(decay_factor_wav(2.0) == 5.0 / 3.0, "a(r=2) != 5/3 exactly");
}

struct DecayConfig {
  const char* name;
  BankFlavor flavor;
  double R_or_r;
  double predicted_a;
  std::size_t samples;
  double period;
  double sigma;
  NodeFilter filter;
  double eta;
};

// 3. Fitted per-layer energy decay keeps pace with the predicted factor.
void check_empirical_decay(Gate& g) {
  const std::vector<DecayConfig> configs = {
      {"band-shifted R=1", BankFlavor::weyl_heisenberg, 1.0, decay_factor_wh(1.0, 1.0), 4096,
       32.0, 0.02, NodeFilter::significant, 1e-6},
      {"band-shifted R=1/2", BankFlavor::weyl_heisenberg, 0.5, decay_factor_wh(0.5, 1.0), 128,
       8.0, 0.1, NodeFilter::all, 1e-3},
      {"dilation r=2", BankFlavor::wavelet, 2.0, decay_factor_wav(2.0), 4096, 32.0, 0.02,
       NodeFilter::significant, 1e-3},
      {"dilation r=sqrt(2)", BankFlavor::wavelet, std::sqrt(2.0), decay_factor_wav(std::sqrt(2.0)),
       4096, 32.0, 0.02, NodeFilter::significant, 1e-3},
  };
  for (const DecayConfig& c : configs) {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid grid(c.samples, c.period);
    const FilterBank bank = c.flavor == BankFlavor::weyl_heisenberg
                                ? build_wh_bank(WhParams{c.R_or_r, 1.0}, grid)
                                : build_wavelet_bank(WaveletParams{c.R_or_r}, grid);
    const Signal f = make_gaussian(grid, c.sigma);
    PropagateOptions opt;
    opt.depth = 4;
    opt.node_filter = c.filter;
    opt.sig_eta = c.eta;
    const ScatteringTree tree = propagate(f, bank, opt);
    const DecayFit fit = fit_decay(tree.profile(), 1, 1.0);
    const double dt = seconds_since(t0);
    g.expect_ge(fit.empirical_a, c.predicted_a - 0.15,
                std::string(c.name) + " fitted decay factor");
    g.expect_le(dt, 30.0, std::string(c.name) + " runtime");
  }
}

// 4. Depth-constrained designs hit their promised capture on both families.
void check_design_capture(Gate& g) {
  const Grid grid(1024, 64.0);
  const Signal f = make_gaussian(grid, 0.15);
  for (double eps : {0.1, 0.05}) {
    for (int N : {1, 2, 3}) {
      for (BankFlavor flavor : {BankFlavor::weyl_heisenberg, BankFlavor::wavelet}) {
        DesignSpec spec;
        spec.epsilon = eps;
        spec.depth = N;
        spec.s = 1.0;
        spec.delta = 1.0;
        const ValidationReport rep = validate_design(f, spec, flavor);
        char tag[128];
        std::snprintf(tag, sizeof(tag), "%s eps=%.2g N=%d",
                      flavor == BankFlavor::weyl_heisenberg ? "band-shifted" : "dilation", eps, N);
        g.expect_ge(rep.capture, 1.0 - eps, std::string(tag) + " capture floor");
        g.expect_le(rep.capture, 1.0 + 1e-8, std::string(tag) + " capture ceiling");
        g.expect(rep.pass, std::string(tag) + " pass flag");
      }
    }
  }
}

// 5. Closed-form counts equal the recursive enumeration, exactly and fast.
void check_count_equivalence(Gate& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const double delta = 1.0;
  for (double R : {0.25, 2.0 / 3.0, 1.0, 1.5}) {
    for (double L : {0.5, 2.0, 10.0}) {
      const NodeCountReport rep = enumerate_sig_paths_rule(WhParams{R, delta}, L, 4);
      for (int n = 0; n <= 4; ++n) {
        char tag[96];
        std::snprintf(tag, sizeof(tag), "band-shifted R=%.4g L=%.2g n=%d", R, L, n);
        g.expect(rep.xi[static_cast<std::size_t>(n)] == xi_wh_closed(n, R, delta, L), tag);
      }
    }
  }
  for (double L : {0.5, 2.0, 10.0}) {
    const double r = std::sqrt(2.0);
    const NodeCountReport rep = enumerate_sig_paths_rule(WaveletParams{r}, L, 4);
    for (int n = 0; n <= 4; ++n) {
      char tag[96];
      std::snprintf(tag, sizeof(tag), "dilation r=sqrt(2) L=%.2g n=%d", L, n);
      g.expect(rep.xi[static_cast<std::size_t>(n)] == xi_wav_closed(n, r, L).count, tag);
    }
  }
  for (double r : {1.2, 2.0, 3.0}) {
    for (double L : {0.5, 2.0, 10.0}) {
      const NodeCountReport rep = enumerate_sig_paths_rule(WaveletParams{r}, L, 1);
      for (int n = 0; n <= 1; ++n) {
        char tag[96];
        std::snprintf(tag, sizeof(tag), "dilation r=%.2g L=%.2g n=%d", r, L, n);
        g.expect(rep.xi[static_cast<std::size_t>(n)] == xi_wav_closed(n, r, L).count, tag);
      }
    }
  }
  g.expect_le(seconds_since(t0), 5.0, "counting equivalence runtime");
}

// 6. Topology taxonomy: transition points and the two special wavelet regimes.
void check_taxonomy(Gate& g) {
  const double d = 1.0, step = d / 400.0, L = 5.0;
  g.expect(classify_wh(WhParams{0.5 * d - step, d}, L) == TopologyClass::single_layer,
           "below half-gap must be single-layer");
  g.expect(classify_wh(WhParams{0.5 * d + step, d}, L) == TopologyClass::constant_width,
           "above half-gap must be constant-width");
  g.expect(classify_wh(WhParams{d - step, d}, L) == TopologyClass::constant_width,
           "below gap width must be constant-width");
  g.expect(classify_wh(WhParams{d + step, d}, L) == TopologyClass::expanding_width,
           "above gap width must be expanding-width");

  for (double Lnarrow : {1.05, 1.2, 1.4}) {
    const NodeCountReport rep =
        enumerate_sig_paths_rule(WaveletParams{std::sqrt(2.0)}, Lnarrow, 5);
    g.expect(classify_wav(WaveletParams{std::sqrt(2.0)}, Lnarrow, 5).cls ==
                 TopologyClass::extremely_narrow,
             "critical dilation with narrow input must classify extremely-narrow");
    bool counts_ok = rep.xi[0] == 1;
    for (int n = 1; n <= 5; ++n) counts_ok = counts_ok && rep.xi[static_cast<std::size_t>(n)] == 2;
    char tag[96];
    std::snprintf(tag, sizeof(tag), "extremely-narrow counts at L=%.3g", Lnarrow);
    g.expect(counts_ok, tag);
  }

  const WavClassification pruned = classify_wav(WaveletParams{1.2}, 10.0, 8);
  g.expect(pruned.cls == TopologyClass::depth_pruned, "slow dilation must be depth-pruned");
  const int cutoff = static_cast<int>(std::ceil(pruned.depth_bound));
  const NodeCountReport rep = enumerate_sig_paths_rule(WaveletParams{1.2}, 10.0, 8);
  for (int n = cutoff + 1; n <= 8; ++n) {
    char tag[96];
    std::snprintf(tag, sizeof(tag), "depth-pruned count beyond layer %d", cutoff);
    g.expect(rep.xi[static_cast<std::size_t>(n)] == 0, tag);
  }
  g.expect(rep.xi[static_cast<std::size_t>(cutoff - 1)] > 0,
           "depth-pruned network must reach its cutoff");
}

// 7. Width minimization: optimum strictly inside the constant-width band.
void check_width_minimum(Gate& g) {
  const double d = 1.0;
  for (int N : {3, 4, 5}) {
    for (double L : {5.0, 10.0, 20.0}) {
      const WidthMinimum m = minimize_theta(N, d, L);
      char tag[96];
      std::snprintf(tag, sizeof(tag), "N=%d L=%.3g", N, L);
      g.expect(m.r_star > d / 2.0 && m.r_star < d,
               std::string(tag) + " optimum inside (delta/2, delta)");
      g.expect(m.theta_at_2delta > m.theta_below_delta,
               std::string(tag) + " width at 2*delta must exceed the sub-delta value");
    }
  }
}

// 8. Mirror-filter modulus identity on random real inputs.
void check_mirror_identity(Gate& g) {
  const Grid grid(2048, 16.0);
  const FilterBank wh = build_wh_bank(WhParams{1.0, 1.0}, grid);
  const FilterBank wav = build_wavelet_bank(WaveletParams{2.0}, grid);
  for (const FilterBank& bank : {wh, wav}) {
    const char* family = bank.flavor() == BankFlavor::weyl_heisenberg ? "band-shifted" : "dilation";
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Signal h = make_bandlimited_noise(grid, 12.0, seed);
      const Spectrum H = analyze(h);
      for (int lambda = 1; lambda <= 5; ++lambda) {
        std::vector<cplx> plus(grid.num_samples(), 0.0), minus(grid.num_samples(), 0.0);
        const FilterAtom& ap = bank.atom(lambda);
        const FilterAtom& am = bank.atom(-lambda);
        for (long m = ap.first_bin(); m <= ap.last_bin(); ++m) {
          plus[grid.storage_index(m)] = H[grid.storage_index(m)] * ap.value_at_bin(m);
        }
        for (long m = am.first_bin(); m <= am.last_bin(); ++m) {
          minus[grid.storage_index(m)] = H[grid.storage_index(m)] * am.value_at_bin(m);
        }
        const Signal up = modulus(synthesize(Spectrum(grid, std::move(plus))));
        const Signal um = modulus(synthesize(Spectrum(grid, std::move(minus))));
        double diff2 = 0.0;
        for (std::size_t t = 0; t < grid.num_samples(); ++t) diff2 += std::norm(up[t] - um[t]);
        diff2 *= grid.period() / static_cast<double>(grid.num_samples());
        char tag[96];
        std::snprintf(tag, sizeof(tag), "%s seed=%llu lambda=%d", family,
                      static_cast<unsigned long long>(seed), lambda);
        g.expect_le(std::sqrt(diff2), 1e-10 * h.l2_norm(), tag);
      }
    }
  }
}

// 9. Demodulation: squared modulus and modulus concentrate at baseband,
//    the split rectifier stays at the carrier.
void check_demodulation(Gate& g) {
  const Grid grid(4096, 32.0);
  const double R = 1.0;
  const FilterBank bank = build_wh_bank(WhParams{R, 1.0}, grid);
  const Signal f = make_bandlimited_noise(grid, 8.0, 7);
  const int lambda = 5;  // carrier R*5 + 1 = 6 >= 5R

  const NonlinearitySpectrum squared =
      nonlinearity_spectrum_experiment(f, bank, lambda, Nonlinearity::squared_modulus, 1e-3);
  g.expect_le(squared.esupp, 2.0 * R + 2.0 * grid.freq_spacing(),
              "squared modulus effective support");

  const NonlinearitySpectrum mod =
      nonlinearity_spectrum_experiment(f, bank, lambda, Nonlinearity::modulus, 1e-3);
  g.expect_le(mod.esupp, 2.2 * R, "modulus effective support");

  const NonlinearitySpectrum rec =
      nonlinearity_spectrum_experiment(f, bank, lambda, Nonlinearity::relu, 1e-3);
  g.expect(rec.carrier >= 5.0 * R, "rectifier probe carrier placement");
  g.expect_ge(rec.esupp, 2.2 * R, "rectifier support must stay at the carrier");
}

struct Criterion {
  const char* name;
  std::function<void(Gate&)> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"frame identity at production size", check_frame_identity},
      {"reference decay constants", check_decay_constants},
      {"fitted energy decay vs prediction", check_empirical_decay},
      {"designed capture on both families", check_design_capture},
      {"closed-form vs enumerated counts", check_count_equivalence},
      {"topology taxonomy and transitions", check_taxonomy},
      {"average-width minimization", check_width_minimum},
      {"mirror-filter modulus identity", check_mirror_identity},
      {"non-linearity demodulation", check_demodulation},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Gate gate;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].fn(gate);
    } catch (const std::exception& e) {
      gate.expect(false, std::string("unhandled exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    std::printf("[%zu/%zu] %-40s %s (%.2f s)\n", i + 1, criteria.size(), criteria[i].name,
                gate.ok ? "PASS" : "FAIL", dt);
    if (!gate.ok) {
      ++failures;
      for (const std::string& d : gate.details) std::printf("        %s\n", d.c_str());
    }
  }
  return failures;
}
