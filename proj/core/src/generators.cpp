#include "scattopo/generators.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace scattopo {

Signal make_gaussian(const Grid& grid, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("make_gaussian: sigma must be positive");
  const double center = grid.period() / 2.0;
  std::vector<cplx> samples(grid.num_samples());
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const double x = grid.sample_position(t) - center;
    samples[t] = cplx(std::exp(-x * x / (2.0 * sigma * sigma)), 0.0);
  }
  return Signal(grid, std::move(samples));
}

Signal make_step(const Grid& grid) {
  std::vector<cplx> samples(grid.num_samples());
  const double lo = grid.period() / 4.0;
  const double hi = 3.0 * grid.period() / 4.0;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const double x = grid.sample_position(t);
    samples[t] = cplx(x >= lo && x < hi ? 1.0 : 0.0, 0.0);
  }
  return Signal(grid, std::move(samples));
}

Signal make_bandlimited_noise(const Grid& grid, double bandwidth,
                              std::uint64_t seed) {
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("make_bandlimited_noise: bandwidth must be positive");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const long half = static_cast<long>(grid.num_samples() / 2);
  const long m_max = std::min<long>(
      half - 1, static_cast<long>(std::floor(bandwidth / grid.freq_spacing())));

  std::vector<cplx> coeffs(grid.num_samples());
  coeffs[0] = cplx(normal(rng), 0.0);
  for (long m = 1; m <= m_max; ++m) {
    const cplx c(normal(rng), normal(rng));
    coeffs[grid.storage_index(m)] = c;
    coeffs[grid.storage_index(-m)] = std::conj(c);
  }
  Signal noisy = synthesize(Spectrum(grid, std::move(coeffs)));

  // A Hermitian spectrum synthesizes to a real signal up to rounding; drop the
  // residual imaginary dust so downstream real-input fast paths apply.
  std::vector<cplx> samples(noisy.size());
  for (std::size_t t = 0; t < samples.size(); ++t) {
    samples[t] = cplx(noisy[t].real(), 0.0);
  }
  Signal real_signal(grid, std::move(samples));
  const double norm = real_signal.l2_norm();
  if (norm == 0.0) throw std::invalid_argument("make_bandlimited_noise: degenerate draw");
  std::vector<cplx> scaled(real_signal.samples().begin(), real_signal.samples().end());
  for (cplx& z : scaled) z /= norm;
  return Signal(grid, std::move(scaled));
}

Signal read_signal_csv(std::istream& in, double period) {
  std::vector<cplx> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double re = 0.0, im = 0.0;
    const char* s = line.c_str();
    char* end = nullptr;
    re = std::strtod(s, &end);
    if (end == s) {
      throw std::invalid_argument("signal csv: malformed line " + std::to_string(line_no));
    }
    while (*end == ' ' || *end == '\t') ++end;
    if (*end == ',') {
      const char* s2 = end + 1;
      char* end2 = nullptr;
      im = std::strtod(s2, &end2);
      if (end2 == s2) {
        throw std::invalid_argument("signal csv: malformed line " + std::to_string(line_no));
      }
    } else if (*end != '\0') {
      throw std::invalid_argument("signal csv: trailing junk on line " + std::to_string(line_no));
    }
    samples.emplace_back(re, im);
  }
  const Grid grid(samples.size(), period);  // size before move: arg order is unspecified
  return Signal(grid, std::move(samples));
}

Signal read_signal_csv_file(const std::string& path, double period) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open signal file: " + path);
  return read_signal_csv(in, period);
}

void write_signal_csv(std::ostream& out, const Signal& f) {
  char buf[80];
  for (std::size_t t = 0; t < f.size(); ++t) {
    const cplx z = f[t];
    if (z.imag() == 0.0) {
      std::snprintf(buf, sizeof buf, "%.17g\n", z.real());
    } else {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
    }
    out << buf;
  }
}

}  // namespace scattopo
