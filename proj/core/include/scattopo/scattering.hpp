#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "scattopo/filter_bank.hpp"
#include "scattopo/signal.hpp"

namespace scattopo {

// Filter indices along a root-to-node walk; entries are nonzero.
using PathIndex = std::vector<int>;

enum class NodeFilter { all, significant };

struct PropagateOptions {
  int depth = 2;
  bool prune_symmetry = true;      // one representative per mirror-twin pair
  NodeFilter node_filter = NodeFilter::significant;
  double sig_eta = 1e-3;           // threshold for measured effective supports
  bool keep_tree = false;          // retain node and output signals
  unsigned threads = 0;            // 0 = hardware concurrency
  std::size_t max_layer_nodes = 2'000'000;
};

struct EnergyProfile {
  std::vector<double> W;    // per-layer propagated energy, W[0] = input energy
  std::vector<double> Phi;  // per-layer output (feature) energy
};

// Result of breadth-first propagation through a filter bank: per-layer energy
// and node-count aggregates, plus the full node/output signals when
// keep_tree was requested. Mirror twins skipped by symmetry pruning are
// accounted through per-node multiplicities, so W and Phi match an unpruned
// run on real inputs.
class ScatteringTree {
 public:
  int depth() const { return depth_; }
  double input_energy() const { return input_energy_; }
  bool pruned_by_symmetry() const { return pruned_; }

  double layer_energy(int n) const;    // W_n, twin-weighted
  double feature_energy(int n) const;  // Phi_n, twin-weighted
  double energy_capture() const;       // sum Phi / input energy

  // Distinct-feature-map count per layer: both signs at depth 1, one per
  // mirror pair deeper down.
  std::uint64_t layer_count(int n) const;
  // Signals actually materialized at a layer.
  std::size_t layer_materialized(int n) const;

  const EnergyProfile& profile() const { return profile_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  // keep_tree accessors; throw std::out_of_range when the path is absent.
  const Signal& node(const PathIndex& path) const;
  const Signal& output(const PathIndex& path) const;
  std::vector<PathIndex> layer_paths(int n) const;
  bool has_tree() const { return keep_tree_; }

 private:
  friend ScatteringTree propagate(const Signal&, const FilterBank&,
                                  const PropagateOptions&);
  void check_layer(int n) const;

  int depth_ = 0;
  bool pruned_ = false;
  bool keep_tree_ = false;
  double input_energy_ = 0.0;
  EnergyProfile profile_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::size_t> materialized_;
  std::map<PathIndex, Signal> nodes_;
  std::map<PathIndex, Signal> outputs_;
};

ScatteringTree propagate(const Signal& f, const FilterBank& bank,
                         const PropagateOptions& options);

double layer_energy(const ScatteringTree& tree, int n);
double feature_energy(const ScatteringTree& tree, int n);
double energy_capture(const ScatteringTree& tree);

enum class Nonlinearity { modulus, squared_modulus, relu };

struct NonlinearitySpectrum {
  Spectrum spectrum;        // transform of rho(f * g_lambda)
  double esupp = 0.0;       // measured at the requested eta
  double carrier = 0.0;     // center frequency of the probed atom
};

// Filters f through atom lambda, applies the pointwise nonlinearity, and
// reports where the output's spectral energy lives. The modulus family
// concentrates near zero regardless of the carrier; the rectifier does not.
NonlinearitySpectrum nonlinearity_spectrum_experiment(const Signal& f,
                                                      const FilterBank& bank,
                                                      int lambda,
                                                      Nonlinearity nonlinearity,
                                                      double eta = 1e-3);

}  // namespace scattopo
