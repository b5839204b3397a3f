#pragma once

#include "scattopo/filter_bank.hpp"
#include "scattopo/scattering.hpp"

namespace scattopo {

// Guaranteed per-layer energy decay base for a band-shifted bank; requires
// R > 0 and delta >= R/2.
double decay_factor_wh(double R, double delta);

// Same for a dilation bank; requires r > 1.
double decay_factor_wav(double r);

// Smoothness exponent entering the decay rate a^(-gamma n); requires s > 0.
double gamma_exponent(double s);

// Inputs for a depth-constrained bank design. norm2/norms are measured from
// the concrete signal; l = 0 selects the default epsilon^(1/gamma) * delta.
struct DesignSpec {
  double epsilon = 0.1;
  int depth = 3;
  double s = 1.0;
  double delta = 1.0;
  double l = 0.0;
  double norm2 = 0.0;
  double norms = 0.0;
};

double default_l(const DesignSpec& spec);

// Required decay base so that the energy left below depth N is at most an
// epsilon fraction; > 1 whenever the preconditions hold.
double design_kappa(const DesignSpec& spec);

// Largest prototype bandwidth achieving decay base kappa; requires kappa > 1.
double design_wh_bandwidth(double kappa, double delta);

// Largest dilation achieving decay base kappa; requires kappa > 1.
double design_wav_dilation(double kappa);

struct DesignResult {
  BankFlavor flavor = BankFlavor::weyl_heisenberg;
  double kappa = 0.0;
  double bound = 0.0;         // admissible R_max or r_max
  double decay_factor = 0.0;  // at the bound; equals kappa by construction
};

DesignResult design_bank(const DesignSpec& spec, BankFlavor flavor);

struct DecayFit {
  double slope = 0.0;        // least-squares slope of log W_n against n
  double empirical_a = 0.0;  // exp(-slope/gamma)
};

// Fits layers n >= n_min, stopping at the first empty one; needs at least
// three nonzero layers and gamma > 0.
DecayFit fit_decay(const EnergyProfile& profile, int n_min = 1,
                   double gamma = 1.0);

struct ValidationReport {
  DesignResult design;
  double measured_norm2 = 0.0;
  double measured_norms = 0.0;
  double capture = 0.0;
  bool pass = false;
};

// Designs the bank from measured norms, propagates f through it to the
// requested depth, and checks the captured energy fraction against
// 1 - epsilon. Throws when the designed bandwidth is finer than one
// frequency bin of f's grid.
ValidationReport validate_design(const Signal& f, DesignSpec spec,
                                 BankFlavor flavor, double sig_eta = 1e-3);

}  // namespace scattopo
