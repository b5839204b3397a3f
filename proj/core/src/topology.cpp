#include "scattopo/topology.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace scattopo {
namespace {

constexpr double kFloorNudge = 1e-9;
const double kSqrt2 = std::sqrt(2.0);

bool is_sqrt2(double r) { return std::abs(r - kSqrt2) < 1e-12; }

// floor with a small forward nudge so boundary-exact parameters land on the
// closed-intersection side.
std::uint64_t nudged_floor(double x) {
  if (x < 0.0) return 0;
  return static_cast<std::uint64_t>(std::floor(x + kFloorNudge));
}

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw std::overflow_error("node count exceeds 64-bit range");
  }
  return a * b;
}

std::uint64_t pow_checked(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out = mul_checked(out, base);
  return out;
}

void check_wh_params(double R, double delta, double L) {
  if (!(R > 0.0) || !(delta >= R / 2.0) || !(L > 0.0)) {
    throw std::invalid_argument(
        "band-shifted count: need R > 0, delta >= R/2, L > 0");
  }
}

void check_wav_params(double r, double L) {
  if (!(r > 1.0) || !(L > 0.0)) {
    throw std::invalid_argument("dilation count: need r > 1, L > 0");
  }
}

// Children of a node whose spectrum occupies [-B, B]: lowest carrier edge of
// index k is R(k-1) + delta, and touching the closed interval counts.
std::uint64_t wh_child_count(double B, double R, double delta) {
  if (!(B > delta)) return 0;
  return nudged_floor((B - delta) / R + 1.0);
}

std::uint64_t wav_child_count(double B, double r) {
  if (!(B > 1.0)) return 0;
  return nudged_floor(std::log(B) / std::log(r) + 1.0);
}

const char* kGrowthStretch = "O(log_r^n L + 2^n (n-1)!)";
const char* kGrowthShrink = "O(log_r^n L)";

struct RuleBudget {
  std::size_t visits = 0;
  std::size_t budget = 0;

  void tick() {
    if (++visits > budget) {
      throw std::runtime_error("path enumeration exceeded visit budget of " +
                               std::to_string(budget));
    }
  }
};

void wh_rule_visit(int d, int depth, double halfwidth, const WhParams& p,
                   std::uint64_t weight, std::vector<std::uint64_t>& xi,
                   RuleBudget& budget) {
  budget.tick();
  xi[static_cast<std::size_t>(d)] += weight;
  if (d == depth) return;
  if (!(halfwidth > p.delta)) return;
  const std::uint64_t child_weight = d == 0 ? 2 : weight;
  for (int k = 1;; ++k) {
    const double left_edge = p.R * (k - 1) + p.delta;
    if (left_edge > halfwidth + kFloorNudge * p.R) break;
    wh_rule_visit(d + 1, depth, 2.0 * p.R, p, child_weight, xi, budget);
  }
}

void wav_rule_visit(int d, int depth, double halfwidth, double r,
                    double edge_tol, std::uint64_t weight,
                    std::vector<std::uint64_t>& xi, RuleBudget& budget) {
  budget.tick();
  xi[static_cast<std::size_t>(d)] += weight;
  if (d == depth) return;
  if (!(halfwidth > 1.0)) return;
  const std::uint64_t child_weight = d == 0 ? 2 : weight;
  const double child_halfwidth = halfwidth * (r * r - 1.0);
  for (double left_edge = 1.0; left_edge <= halfwidth * edge_tol;
       left_edge *= r) {
    wav_rule_visit(d + 1, depth, child_halfwidth, r, edge_tol, child_weight,
                   xi, budget);
  }
}

}  // namespace

std::uint64_t xi_wh_closed(int n, double R, double delta, double L) {
  check_wh_params(R, delta, L);
  if (n < 0) throw std::invalid_argument("layer index must be >= 0");
  if (n == 0) return 1;
  if (!(L > delta)) return 0;
  const std::uint64_t first = mul_checked(2, wh_child_count(L, R, delta));
  if (n == 1) return first;
  if (!(2.0 * R > delta)) return 0;
  return mul_checked(first, pow_checked(nudged_floor(3.0 - delta / R), n - 1));
}

WavCount xi_wav_closed(int n, double r, double L) {
  check_wav_params(r, L);
  if (n < 0) throw std::invalid_argument("layer index must be >= 0");
  if (n == 0) return {1, ""};
  const std::uint64_t first = mul_checked(2, wav_child_count(L, r));
  if (n == 1) return {first, ""};
  if (is_sqrt2(r)) {
    // Bandwidths are depth-invariant here, so the count is an exact power.
    if (first == 0) return {0, ""};
    return {mul_checked(2, pow_checked(first / 2, n)), ""};
  }
  std::uint64_t count = first;
  double halfwidth = L;
  for (int m = 1; m < n; ++m) {
    halfwidth *= r * r - 1.0;
    count = mul_checked(count, wav_child_count(halfwidth, r));
  }
  return {count, r > kSqrt2 ? kGrowthStretch : kGrowthShrink};
}

NodeCountReport count_wh_closed(int depth, const WhParams& params, double L) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  NodeCountReport report;
  report.method = CountMethod::closed_form;
  report.flavor = BankFlavor::weyl_heisenberg;
  report.wh = params;
  report.input_halfwidth = L;
  report.depth = depth;
  for (int n = 0; n <= depth; ++n) {
    report.xi.push_back(xi_wh_closed(n, params.R, params.delta, L));
  }
  return report;
}

NodeCountReport count_wavelet_closed(int depth, const WaveletParams& params,
                                     double L) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  NodeCountReport report;
  report.method = CountMethod::closed_form;
  report.flavor = BankFlavor::wavelet;
  report.wavelet = params;
  report.input_halfwidth = L;
  report.depth = depth;
  for (int n = 0; n <= depth; ++n) {
    WavCount c = xi_wav_closed(n, params.r, L);
    report.xi.push_back(c.count);
    if (!c.growth.empty()) report.growth = c.growth;
  }
  return report;
}

NodeCountReport enumerate_sig_paths_rule(const WhParams& params, double L,
                                         int depth, std::size_t budget) {
  check_wh_params(params.R, params.delta, L);
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  NodeCountReport report;
  report.method = CountMethod::rule_enumeration;
  report.flavor = BankFlavor::weyl_heisenberg;
  report.wh = params;
  report.input_halfwidth = L;
  report.depth = depth;
  report.xi.assign(static_cast<std::size_t>(depth) + 1, 0);
  RuleBudget guard{0, budget};
  wh_rule_visit(0, depth, L, params, 1, report.xi, guard);
  return report;
}

NodeCountReport enumerate_sig_paths_rule(const WaveletParams& params, double L,
                                         int depth, std::size_t budget) {
  check_wav_params(params.r, L);
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  NodeCountReport report;
  report.method = CountMethod::rule_enumeration;
  report.flavor = BankFlavor::wavelet;
  report.wavelet = params;
  report.input_halfwidth = L;
  report.depth = depth;
  report.xi.assign(static_cast<std::size_t>(depth) + 1, 0);
  RuleBudget guard{0, budget};
  // Tolerance matching the closed form's floor nudge in index units.
  const double edge_tol = std::pow(params.r, kFloorNudge);
  wav_rule_visit(0, depth, L, params.r, edge_tol, 1, report.xi, guard);
  return report;
}

NodeCountReport enumerate_sig_paths_empirical(const Signal& f,
                                              const FilterBank& bank, int depth,
                                              double eta) {
  if (f.energy() == 0.0) {
    throw std::invalid_argument("empirical enumeration needs a nonzero signal");
  }
  PropagateOptions options;
  options.depth = depth;
  options.prune_symmetry = true;
  options.node_filter = NodeFilter::significant;
  options.sig_eta = eta;
  ScatteringTree tree = propagate(f, bank, options);

  NodeCountReport report;
  report.method = CountMethod::empirical_enumeration;
  report.flavor = bank.flavor();
  if (bank.flavor() == BankFlavor::weyl_heisenberg) {
    report.wh = bank.wh_params();
  } else {
    report.wavelet = bank.wavelet_params();
  }
  report.input_halfwidth = effective_support(f, eta);
  report.depth = depth;
  report.sig_eta = eta;
  report.xi = tree.counts();
  return report;
}

const char* topology_class_name(TopologyClass cls) {
  switch (cls) {
    case TopologyClass::shallow: return "shallow";
    case TopologyClass::single_layer: return "single-layer";
    case TopologyClass::constant_width: return "constant-width";
    case TopologyClass::expanding_width: return "expanding-width";
    case TopologyClass::depth_pruned: return "depth-pruned";
    case TopologyClass::extremely_narrow: return "extremely-narrow";
  }
  return "unknown";
}

TopologyClass classify_wh(const WhParams& params, double L) {
  check_wh_params(params.R, params.delta, L);
  if (L <= params.delta) return TopologyClass::shallow;
  if (2.0 * params.R <= params.delta) return TopologyClass::single_layer;
  if (params.R < params.delta) return TopologyClass::constant_width;
  return TopologyClass::expanding_width;
}

WavClassification classify_wav(const WaveletParams& params, double L,
                               int depth) {
  check_wav_params(params.r, L);
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (L <= 1.0) return {TopologyClass::shallow, 0.0};
  if (is_sqrt2(params.r) && L <= params.r) {
    return {TopologyClass::extremely_narrow, 0.0};
  }
  if (params.r < kSqrt2 && !is_sqrt2(params.r) && L > std::max(1.0, params.r)) {
    // Halfwidths shrink by (r^2 - 1) per layer and cross 1 after this many.
    const double M = 1.0 - std::log(L) / std::log(params.r * params.r - 1.0);
    if (static_cast<double>(depth) > M) {
      return {TopologyClass::depth_pruned, M};
    }
  }
  return {TopologyClass::expanding_width, 0.0};
}

double theta_wh(int depth, double R, double delta, double L) {
  if (depth < 1) throw std::invalid_argument("theta needs depth >= 1");
  check_wh_params(R, delta, L);
  double total = 0.0;
  int operational = 0;
  for (int n = 1; n <= depth; ++n) {
    const std::uint64_t xi = xi_wh_closed(n, R, delta, L);
    total += static_cast<double>(xi);
    if (xi > 0) ++operational;
  }
  if (operational == 0) return 0.0;
  return total / static_cast<double>(operational);
}

WidthMinimum minimize_theta(int depth, double delta, double L,
                            double grid_step) {
  if (depth < 3) throw std::invalid_argument("width minimization needs depth >= 3");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(L > delta)) throw std::invalid_argument("need L > delta");
  if (grid_step == 0.0) grid_step = delta / 400.0;
  if (!(grid_step > 0.0) || !(grid_step < 2.0 * delta)) {
    throw std::invalid_argument("grid step must lie in (0, 2*delta)");
  }

  WidthMinimum result;
  result.theta_star = std::numeric_limits<double>::infinity();
  WhParams probe{0.0, delta};
  for (int k = 1;; ++k) {
    const double R = static_cast<double>(k) * grid_step;
    if (R >= 2.0 * delta * (1.0 - 1e-12)) break;
    probe.R = R;
    const double theta = theta_wh(depth, R, delta, L);
    result.curve.push_back(ThetaPoint{R, theta, classify_wh(probe, L)});
    if (theta < result.theta_star) {
      result.theta_star = theta;
      result.r_star = R;
    }
    if (R < delta) result.theta_below_delta = theta;
  }
  result.theta_at_2delta = theta_wh(depth, 2.0 * delta, delta, L);
  return result;
}

}  // namespace scattopo
