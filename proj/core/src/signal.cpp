#include "scattopo/signal.hpp"

#include <algorithm>
#include <cmath>

#include "scattopo/fft.hpp"

namespace scattopo {
namespace {

double sum_squares(std::span<const cplx> v) {
  double acc = 0.0;
  for (const cplx& z : v) acc += std::norm(z);
  return acc;
}

}  // namespace

Signal::Signal(Grid grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.num_samples()) {
    throw std::invalid_argument("Signal: sample count does not match grid");
  }
}

Signal Signal::zeros(const Grid& grid) {
  return Signal(grid, std::vector<cplx>(grid.num_samples()));
}

double Signal::energy() const {
  return grid_.period() / static_cast<double>(grid_.num_samples()) *
         sum_squares(samples_);
}

double Signal::l2_norm() const { return std::sqrt(energy()); }

bool Signal::is_real() const {
  return std::all_of(samples_.begin(), samples_.end(),
                     [](const cplx& z) { return z.imag() == 0.0; });
}

Spectrum::Spectrum(Grid grid, std::vector<cplx> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.num_samples()) {
    throw std::invalid_argument("Spectrum: coefficient count does not match grid");
  }
}

Spectrum Spectrum::zeros(const Grid& grid) {
  return Spectrum(grid, std::vector<cplx>(grid.num_samples()));
}

double Spectrum::energy() const {
  return grid_.freq_spacing() * sum_squares(coeffs_);
}

double Spectrum::l2_norm() const { return std::sqrt(energy()); }

Spectrum analyze(const Signal& f) {
  std::vector<cplx> data(f.samples().begin(), f.samples().end());
  fft::forward_inplace(data);
  const double scale =
      f.grid().period() / static_cast<double>(f.grid().num_samples());
  for (cplx& z : data) z *= scale;
  return Spectrum(f.grid(), std::move(data));
}

Signal synthesize(const Spectrum& f_hat) {
  std::vector<cplx> data(f_hat.coeffs().begin(), f_hat.coeffs().end());
  fft::inverse_inplace(data);
  const double scale = 1.0 / f_hat.grid().period();
  for (cplx& z : data) z *= scale;
  return Signal(f_hat.grid(), std::move(data));
}

Signal convolve(const Signal& f, const Spectrum& g_hat) {
  if (f.grid() != g_hat.grid()) {
    throw std::invalid_argument("convolve: grid mismatch");
  }
  Spectrum f_hat = analyze(f);
  std::vector<cplx> prod(f_hat.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = f_hat[i] * g_hat[i];
  return synthesize(Spectrum(f.grid(), std::move(prod)));
}

Signal modulus(const Signal& f) {
  std::vector<cplx> out(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) out[t] = cplx(std::abs(f[t]), 0.0);
  return Signal(f.grid(), std::move(out));
}

Signal relu_complex(const Signal& f) {
  std::vector<cplx> out(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) {
    out[t] = cplx(std::max(0.0, f[t].real()) + std::max(0.0, f[t].imag()), 0.0);
  }
  return Signal(f.grid(), std::move(out));
}

double sobolev_norm(const Signal& f, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  const Spectrum f_hat = analyze(f);
  double acc = 0.0;
  for (std::size_t i = 0; i < f_hat.size(); ++i) {
    const double w = f.grid().bin_frequency(i);
    acc += std::pow(1.0 + w * w, s) * std::norm(f_hat[i]);
  }
  return std::sqrt(f.grid().freq_spacing() * acc);
}

double effective_support(const Spectrum& f_hat, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("effective_support: eta must lie in (0, 1)");
  }
  const Grid& grid = f_hat.grid();
  const std::size_t half = grid.num_samples() / 2;

  // Energy per symmetric level l: bins with |m| == l (the m = -T/2 bin maps
  // to level T/2).
  std::vector<double> level_energy(half + 1, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < f_hat.size(); ++i) {
    const double e = std::norm(f_hat[i]);
    const std::size_t level =
        std::min<std::size_t>(static_cast<std::size_t>(std::labs(grid.bin_index(i))), half);
    level_energy[level] += e;
    total += e;
  }
  if (total == 0.0) {
    throw std::invalid_argument("effective_support: zero signal");
  }
  const double target = (1.0 - eta) * total;
  double acc = 0.0;
  for (std::size_t l = 0; l <= half; ++l) {
    acc += level_energy[l];
    if (acc >= target) return static_cast<double>(l) * grid.freq_spacing();
  }
  return grid.nyquist();
}

double effective_support(const Signal& f, double eta) {
  return effective_support(analyze(f), eta);
}

}  // namespace scattopo
