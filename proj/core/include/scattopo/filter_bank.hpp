#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "scattopo/signal.hpp"

namespace scattopo {

enum class BankFlavor { weyl_heisenberg, wavelet };

struct WhParams {
  double R = 1.0;      // single-sided prototype bandwidth
  double delta = 1.0;  // spectral gap half-width, delta >= R/2
};

struct WaveletParams {
  double r = 2.0;  // dilation factor, r > 1
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool touches(const Interval& other) const {  // closed-set intersection
    return lo <= other.hi && other.lo <= hi;
  }
  bool overlaps_open(const Interval& other) const {  // positive measure
    return lo < other.hi && other.lo < hi;
  }
};

// One band-pass (or the low-pass, index 0) filter, stored as real spectral
// samples over the grid bins inside its analytic support.
class FilterAtom {
 public:
  FilterAtom(int index, Interval analytic_support, long first_bin,
             std::vector<double> values);

  int index() const { return index_; }
  const Interval& analytic_support() const { return analytic_support_; }
  long first_bin() const { return first_bin_; }
  long last_bin() const { return first_bin_ + static_cast<long>(values_.size()) - 1; }
  const std::vector<double>& values() const { return values_; }

  double value_at_bin(long m) const {
    const long off = m - first_bin_;
    if (off < 0 || off >= static_cast<long>(values_.size())) return 0.0;
    return values_[static_cast<std::size_t>(off)];
  }

 private:
  int index_;
  Interval analytic_support_;
  long first_bin_;
  std::vector<double> values_;
};

// Semi-discrete filter bank {chi} u {g_lambda : 0 < |lambda| <= lambda_max}
// whose squared moduli tile unity over the covered band.
class FilterBank {
 public:
  FilterBank(BankFlavor flavor, std::variant<WhParams, WaveletParams> params,
             Grid grid, FilterAtom output_atom, std::vector<FilterAtom> atoms,
             int lambda_max, double covered_band, double gap_halfwidth);

  BankFlavor flavor() const { return flavor_; }
  const Grid& grid() const { return grid_; }
  int lambda_max() const { return lambda_max_; }
  double covered_band() const { return covered_band_; }   // half-width
  double gap_halfwidth() const { return gap_halfwidth_; }

  const WhParams& wh_params() const;
  const WaveletParams& wavelet_params() const;

  const FilterAtom& output_atom() const { return output_atom_; }
  // lambda != 0, |lambda| <= lambda_max; throws std::out_of_range otherwise.
  const FilterAtom& atom(int lambda) const;
  Interval filter_support(int lambda) const;  // analytic; lambda may be 0

  std::size_t num_atoms() const { return atoms_.size(); }

  // Copy with one band-pass atom's samples zeroed; used to probe how a
  // missing tile shows up in the frame deviation.
  FilterBank with_zeroed_atom(int lambda) const;

 private:
  std::size_t slot(int lambda) const;

  BankFlavor flavor_;
  std::variant<WhParams, WaveletParams> params_;
  Grid grid_;
  FilterAtom output_atom_;
  std::vector<FilterAtom> atoms_;  // +1..+lambda_max then -1..-lambda_max
  int lambda_max_;
  double covered_band_;
  double gap_halfwidth_;
};

// Weyl-Heisenberg bank: cosine prototype of bandwidth 2R modulated to the
// carriers +-(R k + delta); requires R > 0, delta >= R/2, and a grid whose
// Nyquist frequency exceeds delta + R.
FilterBank build_wh_bank(const WhParams& params, const Grid& grid);

// Wavelet bank: smooth Meyer-style mother wavelet dilated by powers of r > 1;
// requires the grid Nyquist frequency to exceed r.
FilterBank build_wavelet_bank(const WaveletParams& params, const Grid& grid);

struct FrameReport {
  double max_deviation = 0.0;
  long worst_bin = 0;  // signed frequency index
  bool pass = false;
};

// Max over covered-band bins of |1 - (|chi|^2 + sum |g_lambda|^2)|.
FrameReport verify_parseval(const FilterBank& bank, double tol = 1e-9);

// Max over atoms and paired bins of |g_lambda(-w) - g_{-lambda}(w)|.
double verify_symmetry(const FilterBank& bank);

}  // namespace scattopo
