#include "scattopo/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace scattopo::fft {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// The FFTW planner is not thread safe; plan creation is serialized. Executing
// a cached plan on fresh arrays via fftw_execute_dft is safe, and the plans
// are created FFTW_UNALIGNED so any caller buffer is acceptable.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair pair;
    pair.forward = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
    pair.inverse = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (pair.forward == nullptr || pair.inverse == nullptr) {
      throw std::runtime_error("fft: plan creation failed");
    }
    plans_.emplace(n, pair);
    return pair;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::unordered_map<std::size_t, PlanPair> plans_;
};

}  // namespace

void forward_inplace(std::vector<std::complex<double>>& data) {
  if (data.empty()) throw std::invalid_argument("fft: empty input");
  const PlanPair plans = PlanCache::instance().get(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans.forward, buf, buf);
}

void inverse_inplace(std::vector<std::complex<double>>& data) {
  if (data.empty()) throw std::invalid_argument("fft: empty input");
  const PlanPair plans = PlanCache::instance().get(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans.inverse, buf, buf);
}

}  // namespace scattopo::fft
