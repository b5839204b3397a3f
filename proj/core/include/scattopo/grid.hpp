#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scattopo {

// Periodic sampling grid: T equispaced samples over one period of length X.
// Frequency bins are m / X for integer m in [-T/2, T/2); storage follows FFT
// natural order (nonnegative bins first, then negative ones).
class Grid {
 public:
  Grid(std::size_t num_samples, double period)
      : num_samples_(num_samples), period_(period) {
    if (num_samples_ == 0 || (num_samples_ & (num_samples_ - 1)) != 0) {
      throw std::invalid_argument("Grid: num_samples must be a power of two, got " +
                                  std::to_string(num_samples_));
    }
    if (!(period_ > 0.0)) {
      throw std::invalid_argument("Grid: period must be positive");
    }
  }

  std::size_t num_samples() const { return num_samples_; }
  double period() const { return period_; }

  double freq_spacing() const { return 1.0 / period_; }
  double nyquist() const {
    return static_cast<double>(num_samples_) / (2.0 * period_);
  }

  double sample_position(std::size_t t) const {
    return static_cast<double>(t) * period_ / static_cast<double>(num_samples_);
  }

  // Signed frequency index m of storage slot i.
  long bin_index(std::size_t i) const {
    const long half = static_cast<long>(num_samples_ / 2);
    const long li = static_cast<long>(i);
    return li < half ? li : li - static_cast<long>(num_samples_);
  }

  double bin_frequency(std::size_t i) const {
    return static_cast<double>(bin_index(i)) * freq_spacing();
  }

  // Storage slot of signed frequency index m in [-T/2, T/2).
  std::size_t storage_index(long m) const {
    const long half = static_cast<long>(num_samples_ / 2);
    if (m < -half || m >= half) {
      throw std::out_of_range("Grid: frequency index out of range");
    }
    return static_cast<std::size_t>(m >= 0 ? m : m + static_cast<long>(num_samples_));
  }

  bool operator==(const Grid& other) const {
    return num_samples_ == other.num_samples_ && period_ == other.period_;
  }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  std::size_t num_samples_;
  double period_;
};

}  // namespace scattopo
