#include "scattopo/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "scattopo/fft.hpp"
#include "scattopo/parallel.hpp"

namespace scattopo {
namespace {

struct FrontierNode {
  PathIndex path;
  Signal signal;
  double mult;       // mirror-twin energy multiplicity of this representative
  double xi_weight;  // distinct feature maps this node stands for
};

struct ChildRecord {
  int lambda = 0;
  std::vector<cplx> samples;
  double energy = 0.0;
  double mult = 0.0;
  double xi_weight = 0.0;
};

struct NodeResult {
  double phi = 0.0;  // mult-weighted output energy
  std::vector<ChildRecord> children;
  std::vector<cplx> output_samples;  // only when keep_tree
};

// f_hat restricted to the atom's bins, ready for an inverse transform.
std::vector<cplx> sparse_product(const Spectrum& f_hat, const FilterAtom& atom,
                                 const Grid& grid) {
  std::vector<cplx> out(grid.num_samples(), cplx(0.0, 0.0));
  const auto& vals = atom.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const long m = atom.first_bin() + static_cast<long>(i);
    const std::size_t idx = grid.storage_index(m);
    out[idx] = f_hat[idx] * vals[i];
  }
  return out;
}

double filtered_energy(const Spectrum& f_hat, const FilterAtom& atom,
                       const Grid& grid) {
  double acc = 0.0;
  const auto& vals = atom.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const long m = atom.first_bin() + static_cast<long>(i);
    acc += std::norm(f_hat[grid.storage_index(m)]) * vals[i] * vals[i];
  }
  return grid.freq_spacing() * acc;
}

std::vector<cplx> modulus_of(std::vector<cplx> samples) {
  for (cplx& z : samples) z = cplx(std::abs(z), 0.0);
  return samples;
}

// Unnormalized inverse transform of the (already scaled) spectral product;
// the 1/X synthesis factor is applied in place.
std::vector<cplx> inverse_to_time(std::vector<cplx> coeffs, const Grid& grid) {
  fft::inverse_inplace(coeffs);
  const double scale = 1.0 / grid.period();
  for (cplx& z : coeffs) z *= scale;
  return coeffs;
}

double time_energy(const std::vector<cplx>& samples, const Grid& grid) {
  double acc = 0.0;
  for (const cplx& z : samples) acc += std::norm(z);
  return acc * grid.period() / static_cast<double>(grid.num_samples());
}

}  // namespace

void ScatteringTree::check_layer(int n) const {
  if (n < 0 || n > depth_) {
    throw std::out_of_range("ScatteringTree: layer " + std::to_string(n) +
                            " outside [0, " + std::to_string(depth_) + "]");
  }
}

double ScatteringTree::layer_energy(int n) const {
  check_layer(n);
  return profile_.W[static_cast<std::size_t>(n)];
}

double ScatteringTree::feature_energy(int n) const {
  check_layer(n);
  return profile_.Phi[static_cast<std::size_t>(n)];
}

double ScatteringTree::energy_capture() const {
  if (input_energy_ == 0.0) {
    throw std::invalid_argument("energy_capture: zero input signal");
  }
  double total = 0.0;
  for (double phi : profile_.Phi) total += phi;
  return total / input_energy_;
}

std::uint64_t ScatteringTree::layer_count(int n) const {
  check_layer(n);
  return counts_[static_cast<std::size_t>(n)];
}

std::size_t ScatteringTree::layer_materialized(int n) const {
  check_layer(n);
  return materialized_[static_cast<std::size_t>(n)];
}

const Signal& ScatteringTree::node(const PathIndex& path) const {
  auto it = nodes_.find(path);
  if (it == nodes_.end()) throw std::out_of_range("ScatteringTree: path not stored");
  return it->second;
}

const Signal& ScatteringTree::output(const PathIndex& path) const {
  auto it = outputs_.find(path);
  if (it == outputs_.end()) throw std::out_of_range("ScatteringTree: path not stored");
  return it->second;
}

std::vector<PathIndex> ScatteringTree::layer_paths(int n) const {
  check_layer(n);
  std::vector<PathIndex> out;
  for (const auto& [path, sig] : nodes_) {
    if (static_cast<int>(path.size()) == n) out.push_back(path);
  }
  return out;
}

ScatteringTree propagate(const Signal& f, const FilterBank& bank,
                         const PropagateOptions& options) {
  if (f.grid() != bank.grid()) {
    throw std::invalid_argument("propagate: signal grid does not match bank grid");
  }
  if (options.depth < 0) {
    throw std::invalid_argument("propagate: depth must be >= 0");
  }
  if (options.node_filter == NodeFilter::significant &&
      !(options.sig_eta > 0.0 && options.sig_eta < 1.0)) {
    throw std::invalid_argument("propagate: sig_eta must lie in (0, 1)");
  }

  const Grid& grid = bank.grid();
  ScatteringTree tree;
  tree.depth_ = options.depth;
  tree.pruned_ = options.prune_symmetry;
  tree.keep_tree_ = options.keep_tree;
  tree.input_energy_ = f.energy();

  const bool root_is_real = f.is_real();
  std::vector<FrontierNode> frontier;
  frontier.push_back(FrontierNode{{}, f, 1.0, 1.0});

  tree.profile_.W.assign(static_cast<std::size_t>(options.depth) + 1, 0.0);
  tree.profile_.Phi.assign(static_cast<std::size_t>(options.depth) + 1, 0.0);
  tree.counts_.assign(static_cast<std::size_t>(options.depth) + 1, 0);
  tree.materialized_.assign(static_cast<std::size_t>(options.depth) + 1, 0);
  tree.profile_.W[0] = tree.input_energy_;
  tree.counts_[0] = 1;
  tree.materialized_[0] = 1;

  for (int d = 0; d <= options.depth; ++d) {
    const bool expand = d < options.depth;
    // Negative twins are materialized only when pruning is off, or for a
    // complex input at depth 1 where the mirror identity does not hold.
    const bool materialize_both =
        !options.prune_symmetry || (d == 0 && !root_is_real);

    std::vector<NodeResult> results(frontier.size());
    parallel_for(frontier.size(), options.threads, [&](std::size_t i) {
      const FrontierNode& node = frontier[i];
      NodeResult& res = results[i];
      const Spectrum spec = analyze(node.signal);

      res.phi = node.mult * filtered_energy(spec, bank.output_atom(), grid);
      if (options.keep_tree) {
        res.output_samples =
            inverse_to_time(sparse_product(spec, bank.output_atom(), grid), grid);
      }
      if (!expand) return;

      double L = 0.0;
      if (options.node_filter == NodeFilter::significant) {
        L = effective_support(spec, options.sig_eta);
      }
      for (int k = 1; k <= bank.lambda_max(); ++k) {
        if (options.node_filter == NodeFilter::significant) {
          const Interval band{-L, L};
          if (!bank.atom(k).analytic_support().overlaps_open(band)) continue;
        }
        auto make_child = [&](int lambda, double mult, double xi_weight) {
          ChildRecord child;
          child.lambda = lambda;
          child.samples = modulus_of(
              inverse_to_time(sparse_product(spec, bank.atom(lambda), grid), grid));
          child.energy = time_energy(child.samples, grid);
          child.mult = mult;
          child.xi_weight = xi_weight;
          res.children.push_back(std::move(child));
        };
        if (materialize_both) {
          make_child(k, node.mult, node.xi_weight);
          make_child(-k, node.mult,
                     d == 0 ? node.xi_weight : 0.0);  // deeper twins are duplicates
        } else {
          make_child(k, 2.0 * node.mult,
                     d == 0 ? 2.0 * node.xi_weight : node.xi_weight);
        }
      }
    });

    // Order-fixed reduction: frontier order, then child order within a node.
    std::vector<FrontierNode> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      tree.profile_.Phi[static_cast<std::size_t>(d)] += results[i].phi;
      if (options.keep_tree) {
        tree.nodes_.emplace(frontier[i].path, frontier[i].signal);
        tree.outputs_.emplace(frontier[i].path,
                              Signal(grid, std::move(results[i].output_samples)));
      }
      for (ChildRecord& child : results[i].children) {
        tree.profile_.W[static_cast<std::size_t>(d) + 1] += child.mult * child.energy;
        tree.counts_[static_cast<std::size_t>(d) + 1] +=
            static_cast<std::uint64_t>(std::llround(child.xi_weight));
        PathIndex path = frontier[i].path;
        path.push_back(child.lambda);
        next.push_back(FrontierNode{std::move(path),
                                    Signal(grid, std::move(child.samples)),
                                    child.mult, child.xi_weight});
      }
    }
    if (expand) {
      if (next.size() > options.max_layer_nodes) {
        throw std::runtime_error(
            "propagate: layer " + std::to_string(d + 1) + " would materialize " +
            std::to_string(next.size()) + " nodes (limit " +
            std::to_string(options.max_layer_nodes) +
            "); enable significant-node filtering or raise max_layer_nodes");
      }
      tree.materialized_[static_cast<std::size_t>(d) + 1] = next.size();
      frontier = std::move(next);
    }
  }
  return tree;
}

double layer_energy(const ScatteringTree& tree, int n) { return tree.layer_energy(n); }
double feature_energy(const ScatteringTree& tree, int n) { return tree.feature_energy(n); }
double energy_capture(const ScatteringTree& tree) { return tree.energy_capture(); }

NonlinearitySpectrum nonlinearity_spectrum_experiment(const Signal& f,
                                                      const FilterBank& bank,
                                                      int lambda,
                                                      Nonlinearity nonlinearity,
                                                      double eta) {
  if (f.grid() != bank.grid()) {
    throw std::invalid_argument("nonlinearity_spectrum_experiment: grid mismatch");
  }
  const FilterAtom& atom = bank.atom(lambda);
  const Spectrum f_hat = analyze(f);
  Signal filtered = synthesize(
      Spectrum(f.grid(), sparse_product(f_hat, atom, f.grid())));

  Signal transformed = [&] {
    switch (nonlinearity) {
      case Nonlinearity::modulus:
        return modulus(filtered);
      case Nonlinearity::squared_modulus: {
        std::vector<cplx> out(filtered.size());
        for (std::size_t t = 0; t < filtered.size(); ++t) {
          out[t] = cplx(std::norm(filtered[t]), 0.0);
        }
        return Signal(f.grid(), std::move(out));
      }
      case Nonlinearity::relu:
        return relu_complex(filtered);
    }
    throw std::logic_error("unknown nonlinearity");
  }();

  NonlinearitySpectrum result{analyze(transformed), 0.0,
                              0.5 * (atom.analytic_support().lo +
                                     atom.analytic_support().hi)};
  result.esupp = effective_support(result.spectrum, eta);
  return result;
}

}  // namespace scattopo
