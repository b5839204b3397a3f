#include "scattopo/bank_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace scattopo {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_atom(std::ostream& out, const FilterAtom& atom, bool comma) {
  out << "    {\"index\": " << atom.index() << ", \"support\": ["
      << fmt(atom.analytic_support().lo) << ", "
      << fmt(atom.analytic_support().hi) << "]}" << (comma ? ",\n" : "\n");
}

}  // namespace

void save_bank(const FilterBank& bank, std::ostream& out) {
  const bool wh = bank.flavor() == BankFlavor::weyl_heisenberg;
  out << "{\n";
  out << "  \"format\": \"scattopo-bank\",\n";
  out << "  \"flavor\": \"" << (wh ? "wh" : "wavelet") << "\",\n";
  out << "  \"grid\": {\"num_samples\": " << bank.grid().num_samples()
      << ", \"period\": " << fmt(bank.grid().period()) << "},\n";
  if (wh) {
    out << "  \"params\": {\"R\": " << fmt(bank.wh_params().R)
        << ", \"delta\": " << fmt(bank.wh_params().delta) << "},\n";
  } else {
    out << "  \"params\": {\"r\": " << fmt(bank.wavelet_params().r) << "},\n";
  }
  out << "  \"lambda_max\": " << bank.lambda_max() << ",\n";
  out << "  \"covered_band\": " << fmt(bank.covered_band()) << ",\n";
  out << "  \"gap_halfwidth\": " << fmt(bank.gap_halfwidth()) << ",\n";
  out << "  \"atoms\": [\n";
  write_atom(out, bank.output_atom(), true);
  for (int k = 1; k <= bank.lambda_max(); ++k) {
    write_atom(out, bank.atom(k), true);
    write_atom(out, bank.atom(-k), k < bank.lambda_max());
  }
  out << "  ]\n";
  out << "}\n";
  if (!out) throw std::runtime_error("bank serialization: stream write failed");
}

void save_bank_file(const FilterBank& bank, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save_bank(bank, out);
}

FilterBank load_bank(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bank file is not valid JSON: ") +
                             e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "scattopo-bank") {
      throw std::runtime_error("bank file: unrecognized format tag");
    }
    const Grid grid(doc.at("grid").at("num_samples").get<std::size_t>(),
                    doc.at("grid").at("period").get<double>());
    const std::string flavor = doc.at("flavor").get<std::string>();
    FilterBank bank = [&] {
      if (flavor == "wh") {
        return build_wh_bank(WhParams{doc.at("params").at("R").get<double>(),
                                      doc.at("params").at("delta").get<double>()},
                             grid);
      }
      if (flavor == "wavelet") {
        return build_wavelet_bank(
            WaveletParams{doc.at("params").at("r").get<double>()}, grid);
      }
      throw std::runtime_error("bank file: flavor must be 'wh' or 'wavelet'");
    }();
    if (doc.contains("lambda_max") &&
        doc.at("lambda_max").get<int>() != bank.lambda_max()) {
      throw std::runtime_error(
          "bank file: stored lambda_max does not match the rebuilt bank");
    }
    return bank;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bank file: missing or mistyped field: ") +
                             e.what());
  }
}

FilterBank load_bank_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return load_bank(in);
}

}  // namespace scattopo
