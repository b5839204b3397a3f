#include "scattopo/design.hpp"

#include <cmath>
#include <stdexcept>

namespace scattopo {
namespace {

void check_spec(const DesignSpec& spec, double l) {
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw std::invalid_argument("design: epsilon must lie in (0, 1)");
  }
  if (spec.depth < 1) throw std::invalid_argument("design: depth must be >= 1");
  if (!(spec.s > 0.0)) throw std::invalid_argument("design: s must be positive");
  if (!(spec.delta > 0.0)) {
    throw std::invalid_argument("design: delta must be positive");
  }
  if (!(spec.norm2 > 0.0) || !(spec.norms >= spec.norm2)) {
    throw std::invalid_argument(
        "design: need norms >= norm2 > 0 (is the signal zero?)");
  }
  const double gamma = gamma_exponent(spec.s);
  if (!(l > 0.5 * std::pow(spec.epsilon, 1.0 / gamma) * spec.delta)) {
    throw std::invalid_argument(
        "design: l must exceed epsilon^(1/gamma) * delta / 2");
  }
}

}  // namespace

double decay_factor_wh(double R, double delta) {
  if (!(R > 0.0) || !(delta >= R / 2.0)) {
    throw std::invalid_argument("decay factor: need R > 0 and delta >= R/2");
  }
  return 0.5 + delta / R;
}

double decay_factor_wav(double r) {
  if (!(r > 1.0)) throw std::invalid_argument("decay factor: need r > 1");
  return (r * r + 1.0) / (r * r - 1.0);
}

double gamma_exponent(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("smoothness s must be positive");
  return std::min(1.0, 2.0 * s);
}

double default_l(const DesignSpec& spec) {
  const double gamma = gamma_exponent(spec.s);
  return std::pow(spec.epsilon, 1.0 / gamma) * spec.delta;
}

double design_kappa(const DesignSpec& spec) {
  const double l = spec.l == 0.0 ? default_l(spec) : spec.l;
  check_spec(spec, l);
  const double gamma = gamma_exponent(spec.s);
  const double ratio = std::pow(spec.norms / spec.norm2, 2.0 / gamma);
  const double base =
      2.0 * l * ratio / (std::pow(spec.epsilon, 1.0 / gamma) * spec.delta);
  return std::pow(base, 1.0 / static_cast<double>(spec.depth));
}

double design_wh_bandwidth(double kappa, double delta) {
  if (!(kappa > 1.0)) throw std::invalid_argument("design: need kappa > 1");
  if (!(delta > 0.0)) throw std::invalid_argument("design: delta must be positive");
  return delta / (kappa - 0.5);
}

double design_wav_dilation(double kappa) {
  if (!(kappa > 1.0)) throw std::invalid_argument("design: need kappa > 1");
  return std::sqrt((kappa + 1.0) / (kappa - 1.0));
}

DesignResult design_bank(const DesignSpec& spec, BankFlavor flavor) {
  DesignResult result;
  result.flavor = flavor;
  result.kappa = design_kappa(spec);
  if (flavor == BankFlavor::weyl_heisenberg) {
    result.bound = design_wh_bandwidth(result.kappa, spec.delta);
    result.decay_factor = decay_factor_wh(result.bound, spec.delta);
  } else {
    if (spec.delta != 1.0) {
      throw std::invalid_argument(
          "design: dilation banks fix the spectral gap at 1");
    }
    result.bound = design_wav_dilation(result.kappa);
    result.decay_factor = decay_factor_wav(result.bound);
  }
  return result;
}

DecayFit fit_decay(const EnergyProfile& profile, int n_min, double gamma) {
  if (n_min < 0) throw std::invalid_argument("fit_decay: n_min must be >= 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("fit_decay: gamma must be positive");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (std::size_t n = static_cast<std::size_t>(n_min); n < profile.W.size();
       ++n) {
    if (!(profile.W[n] > 0.0)) break;
    const double x = static_cast<double>(n);
    const double y = std::log(profile.W[n]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 3) {
    throw std::invalid_argument(
        "fit_decay: need at least three consecutive nonzero layers");
  }
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  DecayFit fit;
  fit.slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
  fit.empirical_a = std::exp(-fit.slope / gamma);
  return fit;
}

ValidationReport validate_design(const Signal& f, DesignSpec spec,
                                 BankFlavor flavor, double sig_eta) {
  spec.norm2 = f.l2_norm();
  spec.norms = sobolev_norm(f, spec.s);

  ValidationReport report;
  report.measured_norm2 = spec.norm2;
  report.measured_norms = spec.norms;
  report.design = design_bank(spec, flavor);

  FilterBank bank = [&] {
    if (flavor == BankFlavor::weyl_heisenberg) {
      if (report.design.bound < f.grid().freq_spacing()) {
        throw std::runtime_error(
            "design infeasible on this grid: admissible bandwidth is below "
            "one frequency bin");
      }
      return build_wh_bank(WhParams{report.design.bound, spec.delta}, f.grid());
    }
    return build_wavelet_bank(WaveletParams{report.design.bound}, f.grid());
  }();

  PropagateOptions options;
  options.depth = spec.depth;
  options.prune_symmetry = true;
  options.node_filter = NodeFilter::significant;
  options.sig_eta = sig_eta;
  const ScatteringTree tree = propagate(f, bank, options);
  report.capture = tree.energy_capture();
  report.pass = report.capture >= 1.0 - spec.epsilon;
  return report;
}

}  // namespace scattopo
