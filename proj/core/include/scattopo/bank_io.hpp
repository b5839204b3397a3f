#pragma once

#include <iosfwd>
#include <string>

#include "scattopo/filter_bank.hpp"

namespace scattopo {

// JSON description of a bank: flavor, grid, parameters, lambda_max, covered
// band, and per-atom analytic supports. Filter samples are regenerated on
// load, never stored.
void save_bank(const FilterBank& bank, std::ostream& out);
void save_bank_file(const FilterBank& bank, const std::string& path);

// Rebuilds the bank from its JSON description; throws std::runtime_error on
// malformed input or when the rebuilt bank contradicts the stored metadata.
FilterBank load_bank(std::istream& in);
FilterBank load_bank_file(const std::string& path);

}  // namespace scattopo
