#include "scattopo/filter_bank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scattopo {
namespace {

constexpr double kPi = std::numbers::pi;

// Transition profile x^2 (3 - 2x): climbs 0 -> 1 over [0, 1] with flat ends,
// giving a C^1 square-root partition sin/cos pair.
double cubic_ramp(double x) { return x * x * (3.0 - 2.0 * x); }

// WH prototype g_hat(w) = cos(pi w / (2R)) on [-R, R]; even, so evaluated at
// |w| to make mirrored atoms bit-identical.
double wh_prototype(double w, double R) {
  const double a = std::abs(w);
  if (a > R) return 0.0;
  return std::cos(kPi * a / (2.0 * R));
}

double wh_chi_value(double w, double R, double delta) {
  const double a = std::abs(w);
  if (a <= delta) return 1.0;
  if (a >= delta + R) return 0.0;
  return std::cos(kPi * (a - delta) / (2.0 * R));
}

// Wavelet mother in the octave coordinate t = log_r(w): the atom j covers
// t in [j-1, j+1], rising on the lower octave and falling on the upper one.
// Using t - j as the ramp argument makes adjacent atoms evaluate sin/cos at
// identical arguments, so the tiling closes at machine precision.
double wavelet_atom_value(double w, int j, double log_r) {
  if (w <= 0.0) return 0.0;
  const double t = std::log(w) / log_r;
  const double x = t - static_cast<double>(j);
  if (x < -1.0 || x > 1.0) return 0.0;
  if (x < 0.0) return std::sin(0.5 * kPi * cubic_ramp(x + 1.0));
  return std::cos(0.5 * kPi * cubic_ramp(x));
}

double wavelet_chi_value(double w, double r, double log_r) {
  const double a = std::abs(w);
  if (a <= 1.0) return 1.0;
  if (a >= r) return 0.0;
  return std::cos(0.5 * kPi * cubic_ramp(std::log(a) / log_r));
}

// Sample `value(w)` over the grid bins that fall inside `support`, clipped to
// representable frequencies. The measured support is contained in the
// analytic one by construction.
template <typename F>
FilterAtom sample_atom(int index, Interval support, const Grid& grid, F&& value) {
  const double dw = grid.freq_spacing();
  const long half = static_cast<long>(grid.num_samples() / 2);
  long m_lo = static_cast<long>(std::ceil(support.lo / dw - 1e-12));
  long m_hi = static_cast<long>(std::floor(support.hi / dw + 1e-12));
  m_lo = std::max(m_lo, -half);
  m_hi = std::min(m_hi, half - 1);
  if (m_lo > m_hi) {
    return FilterAtom(index, support, 0, {});
  }
  std::vector<double> values(static_cast<std::size_t>(m_hi - m_lo + 1));
  for (long m = m_lo; m <= m_hi; ++m) {
    values[static_cast<std::size_t>(m - m_lo)] = value(static_cast<double>(m) * dw);
  }
  return FilterAtom(index, support, m_lo, std::move(values));
}

}  // namespace

FilterAtom::FilterAtom(int index, Interval analytic_support, long first_bin,
                       std::vector<double> values)
    : index_(index),
      analytic_support_(analytic_support),
      first_bin_(first_bin),
      values_(std::move(values)) {}

FilterBank::FilterBank(BankFlavor flavor,
                       std::variant<WhParams, WaveletParams> params, Grid grid,
                       FilterAtom output_atom, std::vector<FilterAtom> atoms,
                       int lambda_max, double covered_band, double gap_halfwidth)
    : flavor_(flavor),
      params_(params),
      grid_(grid),
      output_atom_(std::move(output_atom)),
      atoms_(std::move(atoms)),
      lambda_max_(lambda_max),
      covered_band_(covered_band),
      gap_halfwidth_(gap_halfwidth) {}

const WhParams& FilterBank::wh_params() const {
  if (flavor_ != BankFlavor::weyl_heisenberg) {
    throw std::logic_error("FilterBank: not a Weyl-Heisenberg bank");
  }
  return std::get<WhParams>(params_);
}

const WaveletParams& FilterBank::wavelet_params() const {
  if (flavor_ != BankFlavor::wavelet) {
    throw std::logic_error("FilterBank: not a wavelet bank");
  }
  return std::get<WaveletParams>(params_);
}

std::size_t FilterBank::slot(int lambda) const {
  if (lambda == 0 || std::abs(lambda) > lambda_max_) {
    throw std::out_of_range("FilterBank: unknown atom index " + std::to_string(lambda));
  }
  return lambda > 0 ? static_cast<std::size_t>(lambda - 1)
                    : static_cast<std::size_t>(lambda_max_ - lambda - 1);
}

const FilterAtom& FilterBank::atom(int lambda) const { return atoms_[slot(lambda)]; }

Interval FilterBank::filter_support(int lambda) const {
  if (lambda == 0) return output_atom_.analytic_support();
  return atom(lambda).analytic_support();
}

FilterBank FilterBank::with_zeroed_atom(int lambda) const {
  FilterBank copy = *this;
  const std::size_t s = copy.slot(lambda);
  const FilterAtom& old = copy.atoms_[s];
  copy.atoms_[s] = FilterAtom(old.index(), old.analytic_support(), old.first_bin(),
                              std::vector<double>(old.values().size(), 0.0));
  return copy;
}

FilterBank build_wh_bank(const WhParams& params, const Grid& grid) {
  const double R = params.R;
  const double delta = params.delta;
  if (!(R > 0.0)) throw std::invalid_argument("build_wh_bank: R must be positive");
  if (!(delta >= R / 2.0)) {
    throw std::invalid_argument("build_wh_bank: delta must be >= R/2");
  }
  const double omega_max = grid.nyquist();
  if (!(omega_max > delta + R)) {
    throw std::invalid_argument(
        "build_wh_bank: grid Nyquist must exceed delta + R (bank degenerates)");
  }
  const double omega_cov = omega_max - 2.0 * R;
  if (!(omega_cov > 0.0)) {
    throw std::invalid_argument("build_wh_bank: covered band is empty");
  }

  // Smallest k whose support [Rk + delta - R, Rk + delta + R] starts at or
  // beyond the covered band, so truncation only affects frequencies above it.
  const int lambda_max = std::max(
      1, static_cast<int>(std::ceil((omega_cov - delta + R) / R - 1e-9)));

  std::vector<FilterAtom> atoms;
  atoms.reserve(2 * static_cast<std::size_t>(lambda_max));
  for (int k = 1; k <= lambda_max; ++k) {
    const double carrier = R * k + delta;
    atoms.push_back(sample_atom(k, Interval{carrier - R, carrier + R}, grid,
                                [&](double w) { return wh_prototype(w - carrier, R); }));
  }
  for (int k = 1; k <= lambda_max; ++k) {
    const double carrier = R * k + delta;
    atoms.push_back(sample_atom(-k, Interval{-carrier - R, -carrier + R}, grid,
                                [&](double w) { return wh_prototype(w + carrier, R); }));
  }
  FilterAtom chi = sample_atom(0, Interval{-(delta + R), delta + R}, grid,
                               [&](double w) { return wh_chi_value(w, R, delta); });
  return FilterBank(BankFlavor::weyl_heisenberg, params, grid, std::move(chi),
                    std::move(atoms), lambda_max, omega_cov, delta);
}

FilterBank build_wavelet_bank(const WaveletParams& params, const Grid& grid) {
  const double r = params.r;
  if (!(r > 1.0)) throw std::invalid_argument("build_wavelet_bank: r must exceed 1");
  const double omega_max = grid.nyquist();
  if (!(omega_max > r)) {
    throw std::invalid_argument(
        "build_wavelet_bank: grid Nyquist must exceed r (bank degenerates)");
  }
  const double omega_cov = omega_max / (r * r);
  const double log_r = std::log(r);

  // Smallest j with r^(j-1) >= covered band edge.
  int lambda_max = 1;
  double p = 1.0;
  while (p < omega_cov * (1.0 - 1e-12)) {
    p *= r;
    ++lambda_max;
  }

  std::vector<FilterAtom> atoms;
  atoms.reserve(2 * static_cast<std::size_t>(lambda_max));
  for (int j = 1; j <= lambda_max; ++j) {
    const Interval support{std::pow(r, j - 1), std::pow(r, j + 1)};
    atoms.push_back(sample_atom(j, support, grid, [&](double w) {
      return wavelet_atom_value(w, j, log_r);
    }));
  }
  for (int j = 1; j <= lambda_max; ++j) {
    const Interval support{-std::pow(r, j + 1), -std::pow(r, j - 1)};
    atoms.push_back(sample_atom(-j, support, grid, [&](double w) {
      return wavelet_atom_value(-w, j, log_r);
    }));
  }
  FilterAtom chi = sample_atom(0, Interval{-r, r}, grid, [&](double w) {
    return wavelet_chi_value(w, r, log_r);
  });
  return FilterBank(BankFlavor::wavelet, params, grid, std::move(chi),
                    std::move(atoms), lambda_max, omega_cov, 1.0);
}

FrameReport verify_parseval(const FilterBank& bank, double tol) {
  const Grid& grid = bank.grid();
  const std::size_t n = grid.num_samples();
  const long half = static_cast<long>(n / 2);

  // Accumulate the tiling sum sparsely: O(total stored bins), not
  // O(bins x atoms).
  std::vector<double> tiling(n, 0.0);
  auto add_atom = [&](const FilterAtom& a) {
    const auto& vals = a.values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const long m = a.first_bin() + static_cast<long>(i);
      tiling[grid.storage_index(m)] += vals[i] * vals[i];
    }
  };
  add_atom(bank.output_atom());
  for (int k = 1; k <= bank.lambda_max(); ++k) {
    add_atom(bank.atom(k));
    add_atom(bank.atom(-k));
  }

  FrameReport report;
  for (long m = -half; m < half; ++m) {
    const double w = static_cast<double>(m) * grid.freq_spacing();
    if (std::abs(w) > bank.covered_band()) continue;
    const double dev = std::abs(1.0 - tiling[grid.storage_index(m)]);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_bin = m;
    }
  }
  report.pass = report.max_deviation < tol;
  return report;
}

double verify_symmetry(const FilterBank& bank) {
  const long half = static_cast<long>(bank.grid().num_samples() / 2);
  double worst = 0.0;
  for (int k = 1; k <= bank.lambda_max(); ++k) {
    const FilterAtom& pos = bank.atom(k);
    const FilterAtom& neg = bank.atom(-k);
    // Compare g_k(-w) with g_{-k}(w) over every bin either atom stores; the
    // m = -T/2 bin has no mirror and is skipped.
    auto scan = [&](const FilterAtom& a, const FilterAtom& b) {
      for (std::size_t i = 0; i < a.values().size(); ++i) {
        const long m = a.first_bin() + static_cast<long>(i);
        if (-m >= half || -m < -half) continue;
        worst = std::max(worst, std::abs(a.values()[i] - b.value_at_bin(-m)));
      }
    };
    scan(pos, neg);
    scan(neg, pos);
  }
  return worst;
}

}  // namespace scattopo
