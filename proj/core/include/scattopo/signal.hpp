#pragma once

#include <complex>
#include <span>
#include <vector>

#include "scattopo/grid.hpp"

namespace scattopo {

using cplx = std::complex<double>;

class Spectrum;

// Time-domain samples on a periodic grid. Values are immutable after
// construction; all norms use the integral normalization (X/T) * sum.
class Signal {
 public:
  Signal(Grid grid, std::vector<cplx> samples);
  static Signal zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  const cplx& operator[](std::size_t t) const { return samples_[t]; }
  std::size_t size() const { return samples_.size(); }

  double energy() const;   // squared L2 norm
  double l2_norm() const;
  bool is_real() const;    // every imaginary part exactly zero

 private:
  Grid grid_;
  std::vector<cplx> samples_;
};

// Frequency-domain coefficients in FFT storage order; coefficient i sits at
// frequency grid.bin_frequency(i). Norms use dw * sum with dw = 1/X.
class Spectrum {
 public:
  Spectrum(Grid grid, std::vector<cplx> coeffs);
  static Spectrum zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  const cplx& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const { return coeffs_.size(); }

  double energy() const;
  double l2_norm() const;

 private:
  Grid grid_;
  std::vector<cplx> coeffs_;
};

// Normalized transforms: analyze approximates the Fourier integral, so that
// synthesize(analyze(f)) == f up to rounding and the two energy conventions
// coincide (discrete Parseval).
Spectrum analyze(const Signal& f);
Signal synthesize(const Spectrum& f_hat);

// Spectral-product convolution: synthesize(analyze(f) .* g_hat).
// Throws std::invalid_argument on grid mismatch.
Signal convolve(const Signal& f, const Spectrum& g_hat);

// Pointwise |z|; output is real-valued and preserves the L2 norm.
Signal modulus(const Signal& f);

// Pointwise max(0, Re z) + max(0, Im z); output is real-valued.
Signal relu_complex(const Signal& f);

// sqrt( dw * sum (1 + w^2)^s |f_hat(w)|^2 ), s >= 0.
double sobolev_norm(const Signal& f, double s);

// Smallest grid-aligned L with at least (1 - eta) of the spectral energy in
// [-L, L]. Throws std::invalid_argument for the zero signal or eta outside
// (0, 1).
double effective_support(const Signal& f, double eta = 1e-3);
double effective_support(const Spectrum& f_hat, double eta = 1e-3);

}  // namespace scattopo
