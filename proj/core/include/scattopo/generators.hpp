#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "scattopo/signal.hpp"

namespace scattopo {

// Smooth bump exp(-(x - X/2)^2 / (2 sigma^2)); spectral width scales as
// 1/sigma. Real-valued.
Signal make_gaussian(const Grid& grid, double sigma);

// Indicator of [X/4, 3X/4): a cartoon-like discontinuous test signal.
Signal make_step(const Grid& grid);

// Real noise with spectrum drawn i.i.d. complex Gaussian on bins inside
// [-bandwidth, bandwidth] (Hermitian-symmetric), normalized to unit L2 norm.
// Deterministic for a fixed seed.
Signal make_bandlimited_noise(const Grid& grid, double bandwidth,
                              std::uint64_t seed);

// CSV signal format: one sample per line, either "re" or "re,im".
Signal read_signal_csv(std::istream& in, double period);
Signal read_signal_csv_file(const std::string& path, double period);
void write_signal_csv(std::ostream& out, const Signal& f);

}  // namespace scattopo
