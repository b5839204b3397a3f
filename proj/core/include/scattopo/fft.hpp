#pragma once

#include <complex>
#include <vector>

namespace scattopo::fft {

// Unnormalized in-place DFT / inverse DFT (no 1/T factor on the inverse).
// Backed by cached FFTW plans; safe to call concurrently from multiple threads.
void forward_inplace(std::vector<std::complex<double>>& data);
void inverse_inplace(std::vector<std::complex<double>>& data);

}  // namespace scattopo::fft
