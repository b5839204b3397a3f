#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scattopo/filter_bank.hpp"
#include "scattopo/scattering.hpp"

namespace scattopo {

enum class CountMethod { closed_form, rule_enumeration, empirical_enumeration };

// Per-layer counts of operationally significant nodes, together with the
// parameters that produced them.
struct NodeCountReport {
  std::vector<std::uint64_t> xi;  // layers 0..depth
  CountMethod method = CountMethod::closed_form;
  BankFlavor flavor = BankFlavor::weyl_heisenberg;
  WhParams wh{};
  WaveletParams wavelet{};
  double input_halfwidth = 0.0;  // L
  int depth = 0;
  double sig_eta = 0.0;   // set for empirical enumeration only
  std::string growth;     // asymptotic label for inexact wavelet branches
};

// Closed-form count for the band-shifted bank. Requires R > 0, delta >= R/2,
// L > 0, n >= 0.
std::uint64_t xi_wh_closed(int n, double R, double delta, double L);

struct WavCount {
  std::uint64_t count = 0;
  std::string growth;  // empty when the value is an exact closed form
};

// Count for the dilation bank. Exact for n <= 1 and for r = sqrt(2); other
// branches evaluate the shrinking/stretching bandwidth recursion and carry
// the growth-class label. Requires r > 1, L > 0, n >= 0.
WavCount xi_wav_closed(int n, double r, double L);

NodeCountReport count_wh_closed(int depth, const WhParams& params, double L);
NodeCountReport count_wavelet_closed(int depth, const WaveletParams& params, double L);

// Recursive enumeration over analytic filter supports with the per-depth
// bandwidth rule (input halfwidth L at the root, 2R per deeper node for the
// band-shifted bank, L(r^2-1)^n for the dilation bank). Mirror twins count
// once from depth 2 on. Throws std::runtime_error past the visit budget.
NodeCountReport enumerate_sig_paths_rule(const WhParams& params, double L,
                                         int depth,
                                         std::size_t budget = 10'000'000);
NodeCountReport enumerate_sig_paths_rule(const WaveletParams& params, double L,
                                         int depth,
                                         std::size_t budget = 10'000'000);

// Same recursion with supports measured on actually propagated feature maps.
NodeCountReport enumerate_sig_paths_empirical(const Signal& f,
                                              const FilterBank& bank, int depth,
                                              double eta = 1e-3);

enum class TopologyClass {
  shallow,
  single_layer,
  constant_width,
  expanding_width,
  depth_pruned,
  extremely_narrow,
};

const char* topology_class_name(TopologyClass cls);

TopologyClass classify_wh(const WhParams& params, double L);

struct WavClassification {
  TopologyClass cls = TopologyClass::expanding_width;
  double depth_bound = 0.0;  // layers with nonzero counts; depth_pruned only
};

WavClassification classify_wav(const WaveletParams& params, double L, int depth);

// Average count over the layers 1..depth that are operational (nonzero);
// zero when no layer is. Requires depth >= 1.
double theta_wh(int depth, double R, double delta, double L);

struct ThetaPoint {
  double R = 0.0;
  double theta = 0.0;
  TopologyClass cls = TopologyClass::shallow;
};

struct WidthMinimum {
  double r_star = 0.0;
  double theta_star = 0.0;
  std::vector<ThetaPoint> curve;
  double theta_at_2delta = 0.0;     // expanding-width endpoint value
  double theta_below_delta = 0.0;   // value at the largest grid point < delta
};

// Grid search of theta_wh over R in (0, 2*delta), step grid_step (0 selects
// delta/400); ties resolve to the smallest R. Requires depth >= 3, L > delta.
WidthMinimum minimize_theta(int depth, double delta, double L,
                            double grid_step = 0.0);

}  // namespace scattopo
