#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scattopo/bank_io.hpp"
#include "scattopo/design.hpp"
#include "scattopo/generators.hpp"
#include "scattopo/scattering.hpp"
#include "scattopo/topology.hpp"
#include "scattopo/version.hpp"

namespace {

using namespace scattopo;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fnum(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string jesc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::string jarr(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fnum(v[i]);
  }
  return out + "]";
}

std::string jarr(const std::vector<std::uint64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

// Ordered flat JSON builder; insertion order is emission order so reports
// are byte-stable.
class JsonObject {
 public:
  void field(const std::string& key, const std::string& raw) {
    parts_.push_back("\"" + key + "\": " + raw);
  }
  void str(const std::string& key, const std::string& value) {
    field(key, "\"" + jesc(value) + "\"");
  }
  void num(const std::string& key, double value) { field(key, fnum(value)); }
  void integer(const std::string& key, long long value) {
    field(key, std::to_string(value));
  }
  void boolean(const std::string& key, bool value) {
    field(key, value ? "true" : "false");
  }
  std::string render() const {
    std::string out = "{";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ", ";
      out += parts_[i];
    }
    return out + "}";
  }

 private:
  std::vector<std::string> parts_;
};

void emit_report(const std::string& json, const std::string& path) {
  if (path.empty()) {
    std::cout << json << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << json << "\n";
  if (!out) throw IoError("write failed: " + path);
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

struct Config {
  std::string flavor = "wh";
  double R = 1.0;
  double delta = 1.0;
  double r = 2.0;
  std::size_t samples = 4096;
  double period = 32.0;
  std::string out;
  std::string bank_path;
  std::string input;
  std::string gen = "gaussian";
  double sigma = 0.15;
  double bandwidth = 8.0;
  std::uint64_t seed = 7;
  int depth = 2;
  bool prune = true;
  std::string filter = "significant";
  double sig_eta = 1e-3;
  unsigned threads = 0;
  std::string report;
  std::string energy_csv;
  double gamma = 1.0;
  double L = 4.0;
  std::string method = "closed";
  double step = 0.0;
  std::string curve_csv;
  double epsilon = 0.1;
  double s = 1.0;
  double l = 0.0;
  int lambda = 1;
  std::string nonlinearity = "modulus";
  double eta = 1e-3;
  std::string which = "fig_decay";
};

BankFlavor parse_flavor(const std::string& name) {
  if (name == "wh") return BankFlavor::weyl_heisenberg;
  if (name == "wav" || name == "wavelet") return BankFlavor::wavelet;
  throw std::invalid_argument("flavor must be 'wh' or 'wav'");
}

FilterBank build_from_params(const Config& cfg, const Grid& grid) {
  if (parse_flavor(cfg.flavor) == BankFlavor::weyl_heisenberg) {
    return build_wh_bank(WhParams{cfg.R, cfg.delta}, grid);
  }
  return build_wavelet_bank(WaveletParams{cfg.r}, grid);
}

std::string describe_input(const Config& cfg) {
  if (!cfg.input.empty()) return cfg.input;
  if (cfg.gen == "gaussian") return "gaussian(sigma=" + fnum(cfg.sigma) + ")";
  if (cfg.gen == "step") return "step";
  if (cfg.gen == "noise") {
    return "noise(bandwidth=" + fnum(cfg.bandwidth) +
           ",seed=" + std::to_string(cfg.seed) + ")";
  }
  return cfg.gen;
}

Signal load_input(const Config& cfg, const Grid& grid) {
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw IoError("cannot open: " + cfg.input);
    Signal f = read_signal_csv(in, grid.period());
    if (f.grid() != grid) {
      throw std::invalid_argument(
          "input sample count does not match the requested grid");
    }
    return f;
  }
  if (cfg.gen == "gaussian") return make_gaussian(grid, cfg.sigma);
  if (cfg.gen == "step") return make_step(grid);
  if (cfg.gen == "noise") {
    return make_bandlimited_noise(grid, cfg.bandwidth, cfg.seed);
  }
  throw std::invalid_argument("unknown generator: " + cfg.gen);
}

void echo_bank_params(JsonObject& params, const FilterBank& bank) {
  if (bank.flavor() == BankFlavor::weyl_heisenberg) {
    params.str("flavor", "wh");
    params.num("R", bank.wh_params().R);
    params.num("delta", bank.wh_params().delta);
  } else {
    params.str("flavor", "wavelet");
    params.num("r", bank.wavelet_params().r);
  }
  params.integer("num_samples", static_cast<long long>(bank.grid().num_samples()));
  params.num("period", bank.grid().period());
}

void cmd_bank(const Config& cfg) {
  const Grid grid(cfg.samples, cfg.period);
  const FilterBank bank = build_from_params(cfg, grid);
  {
    std::ofstream out(cfg.out);
    if (!out) throw IoError("cannot open for writing: " + cfg.out);
    save_bank(bank, out);
    if (!out) throw IoError("write failed: " + cfg.out);
  }
  const FrameReport frame = verify_parseval(bank);

  JsonObject params;
  echo_bank_params(params, bank);
  JsonObject doc;
  doc.str("version", kVersion);
  doc.str("command", "bank");
  doc.field("params", params.render());
  doc.integer("lambda_max", bank.lambda_max());
  doc.num("covered_band", bank.covered_band());
  doc.num("gap_halfwidth", bank.gap_halfwidth());
  doc.num("frame_deviation", frame.max_deviation);
  doc.str("out", cfg.out);
  std::cout << doc.render() << "\n";
}

NodeFilter parse_filter(const std::string& name) {
  if (name == "all") return NodeFilter::all;
  if (name == "significant" || name == "sig") return NodeFilter::significant;
  throw std::invalid_argument("node filter must be 'significant' or 'all'");
}

void cmd_run(const Config& cfg) {
  std::ifstream bank_in(cfg.bank_path);
  if (!bank_in) throw IoError("cannot open: " + cfg.bank_path);
  const FilterBank bank = load_bank(bank_in);
  const Signal f = load_input(cfg, bank.grid());

  PropagateOptions options;
  options.depth = cfg.depth;
  options.prune_symmetry = cfg.prune;
  options.node_filter = parse_filter(cfg.filter);
  options.sig_eta = cfg.sig_eta;
  options.threads = cfg.threads;
  const ScatteringTree tree = propagate(f, bank, options);

  JsonObject params;
  echo_bank_params(params, bank);
  params.integer("depth", cfg.depth);
  params.boolean("prune", cfg.prune);
  params.str("node_filter", cfg.filter);
  params.num("sig_eta", cfg.sig_eta);
  params.str("input", describe_input(cfg));

  JsonObject doc;
  doc.str("version", kVersion);
  doc.str("command", "run");
  doc.field("params", params.render());
  doc.num("input_energy", tree.input_energy());
  doc.field("W", jarr(tree.profile().W));
  doc.field("Phi", jarr(tree.profile().Phi));
  doc.field("xi", jarr(tree.counts()));
  std::vector<std::uint64_t> materialized;
  for (int n = 0; n <= tree.depth(); ++n) {
    materialized.push_back(tree.layer_materialized(n));
  }
  doc.field("materialized", jarr(materialized));
  doc.num("capture", tree.energy_capture());
  try {
    const DecayFit fit = fit_decay(tree.profile(), 1, cfg.gamma);
    JsonObject fit_obj;
    fit_obj.num("gamma", cfg.gamma);
    fit_obj.num("slope", fit.slope);
    fit_obj.num("empirical_a", fit.empirical_a);
    doc.field("decay_fit", fit_obj.render());
  } catch (const std::invalid_argument&) {
    // fewer than three populated layers; omit the fit block
  }
  emit_report(doc.render(), cfg.report);

  if (!cfg.energy_csv.empty()) {
    std::ofstream csv = open_csv(cfg.energy_csv);
    csv << "n,W_n,Phi_n,cumulative_capture\n";
    double cumulative = 0.0;
    for (int n = 0; n <= tree.depth(); ++n) {
      cumulative += tree.feature_energy(n);
      csv << n << "," << fnum(tree.layer_energy(n)) << ","
          << fnum(tree.feature_energy(n)) << ","
          << fnum(cumulative / tree.input_energy()) << "\n";
    }
    if (!csv) throw IoError("write failed: " + cfg.energy_csv);
  }
}

void cmd_count(const Config& cfg) {
  const BankFlavor flavor = parse_flavor(cfg.flavor);
  NodeCountReport report;
  if (cfg.method == "closed") {
    report = flavor == BankFlavor::weyl_heisenberg
                 ? count_wh_closed(cfg.depth, WhParams{cfg.R, cfg.delta}, cfg.L)
                 : count_wavelet_closed(cfg.depth, WaveletParams{cfg.r}, cfg.L);
  } else if (cfg.method == "rule") {
    report = flavor == BankFlavor::weyl_heisenberg
                 ? enumerate_sig_paths_rule(WhParams{cfg.R, cfg.delta}, cfg.L,
                                            cfg.depth)
                 : enumerate_sig_paths_rule(WaveletParams{cfg.r}, cfg.L,
                                            cfg.depth);
  } else if (cfg.method == "empirical") {
    const Grid grid(cfg.samples, cfg.period);
    const FilterBank bank = build_from_params(cfg, grid);
    const Signal f = load_input(cfg, grid);
    report = enumerate_sig_paths_empirical(f, bank, cfg.depth, cfg.sig_eta);
  } else {
    throw std::invalid_argument("method must be closed, rule, or empirical");
  }

  JsonObject params;
  params.str("flavor", cfg.flavor);
  if (flavor == BankFlavor::weyl_heisenberg) {
    params.num("R", cfg.R);
    params.num("delta", cfg.delta);
  } else {
    params.num("r", cfg.r);
  }
  params.num("L", report.input_halfwidth);
  params.integer("depth", cfg.depth);
  params.str("method", cfg.method);
  if (report.method == CountMethod::empirical_enumeration) {
    params.num("sig_eta", report.sig_eta);
    params.str("input", describe_input(cfg));
  }

  JsonObject doc;
  doc.str("version", kVersion);
  doc.str("command", "count");
  doc.field("params", params.render());
  doc.field("xi", jarr(report.xi));
  if (!report.growth.empty()) doc.str("growth", report.growth);
  emit_report(doc.render(), cfg.report);
}

void cmd_classify(const Config& cfg) {
  const BankFlavor flavor = parse_flavor(cfg.flavor);
  JsonObject params;
  params.str("flavor", cfg.flavor);
  JsonObject doc;
  doc.str("version", kVersion);
  doc.str("command", "classify");
  if (flavor == BankFlavor::weyl_heisenberg) {
    params.num("R", cfg.R);
    params.num("delta", cfg.delta);
    params.num("L", cfg.L);
    doc.field("params", params.render());
    doc.str("topology_class",
            topology_class_name(classify_wh(WhParams{cfg.R, cfg.delta}, cfg.L)));
  } else {
    params.num("r", cfg.r);
    params.num("L", cfg.L);
    params.integer("depth", cfg.depth);
    doc.field("params", params.render());
    const WavClassification cls =
        classify_wav(WaveletParams{cfg.r}, cfg.L, cfg.depth);
    doc.str("topology_class", topology_class_name(cls.cls));
    if (cls.cls == TopologyClass::depth_pruned) {
      doc.num("depth_bound", cls.depth_bound);
    }
  }
  emit_report(doc.render(), cfg.report);
}

void write_theta_curve(const WidthMinimum& minimum, const std::string& path) {
  std::ofstream csv = open_csv(path);
  csv << "R,Theta,topology_class\n";
  for (const ThetaPoint& point : minimum.curve) {
    csv << fnum(point.R) << "," << fnum(point.theta) << ","
        << topology_class_name(point.cls) << "\n";
  }
  if (!csv) throw IoError("write failed: " + path);
}

void cmd_minimize_theta(const Config& cfg) {
  const WidthMinimum minimum =
      minimize_theta(cfg.depth, cfg.delta, cfg.L, cfg.step);

  JsonObject params;
  params.integer("depth", cfg.depth);
  params.num("delta", cfg.delta);
  params.num("L", cfg.L);
  params.num("step", cfg.step == 0.0 ? cfg.delta / 400.0 : cfg.step);
  JsonObject doc;
  doc.str("version", kVersion);
  doc.str("command", "minimize-theta");
  doc.field("params", params.render());
  doc.num("R_star", minimum.r_star);
  doc.num("theta", minimum.theta_star);
  doc.num("theta_below_delta", minimum.theta_below_delta);
  doc.num("theta_at_2delta", minimum.theta_at_2delta);
  WhParams at_star{minimum.r_star, cfg.delta};
  doc.str("topology_class", topology_class_name(classify_wh(at_star, cfg.L)));
  emit_report(doc.render(), cfg.report);

  if (!cfg.curve_csv.empty()) write_theta_curve(minimum, cfg.curve_csv);
}

void cmd_design(const Config& cfg) {
  const BankFlavor flavor = parse_flavor(cfg.flavor);
  const Grid grid(cfg.samples, cfg.period);
  const Signal f = load_input(cfg, grid);

  DesignSpec spec;
  spec.epsilon = cfg.epsilon;
  spec.depth = cfg.depth;
  spec.s = cfg.s;
  spec.delta = cfg.delta;
  spec.l = cfg.l;
  const ValidationReport report = validate_design(f, spec, flavor, cfg.sig_eta);

  JsonObject params;
  params.str("flavor", cfg.flavor);
  params.num("epsilon", cfg.epsilon);
  params.integer("depth", cfg.depth);
  params.num("s", cfg.s);
  params.num("delta", cfg.delta);
  params.num("l", cfg.l);
  params.num("sig_eta", cfg.sig_eta);
  params.integer("num_samples", static_cast<long long>(cfg.samples));
  params.num("period", cfg.period);
  params.str("input", describe_input(cfg));

  JsonObject doc;
  doc.str("version", kVersion);
  doc.str("command", "design");
  doc.field("params", params.render());
  doc.num("kappa", report.design.kappa);
  doc.num(flavor == BankFlavor::weyl_heisenberg ? "R_max" : "r_max",
          report.design.bound);
  doc.num("decay_factor", report.design.decay_factor);
  doc.num("measured_norm2", report.measured_norm2);
  doc.num("measured_norms", report.measured_norms);
  doc.num("capture", report.capture);
  doc.boolean("pass", report.pass);
  emit_report(doc.render(), cfg.report);
}

Nonlinearity parse_nonlinearity(const std::string& name) {
  if (name == "modulus") return Nonlinearity::modulus;
  if (name == "squared") return Nonlinearity::squared_modulus;
  if (name == "relu") return Nonlinearity::relu;
  throw std::invalid_argument("nonlinearity must be modulus, squared, or relu");
}

void cmd_demod(const Config& cfg) {
  const Grid grid(cfg.samples, cfg.period);
  const FilterBank bank = build_from_params(cfg, grid);
  const Signal f = load_input(cfg, grid);
  const NonlinearitySpectrum result = nonlinearity_spectrum_experiment(
      f, bank, cfg.lambda, parse_nonlinearity(cfg.nonlinearity), cfg.eta);

  JsonObject params;
  echo_bank_params(params, bank);
  params.integer("lambda", cfg.lambda);
  params.str("nonlinearity", cfg.nonlinearity);
  params.num("eta", cfg.eta);
  params.str("input", describe_input(cfg));

  JsonObject doc;
  doc.str("version", kVersion);
  doc.str("command", "demod");
  doc.field("params", params.render());
  doc.num("carrier", result.carrier);
  doc.num("esupp", result.esupp);
  emit_report(doc.render(), cfg.report);

  if (!cfg.curve_csv.empty()) {
    std::ofstream csv = open_csv(cfg.curve_csv);
    csv << "omega,magnitude\n";
    const Grid& g = result.spectrum.grid();
    const long half = static_cast<long>(g.num_samples()) / 2;
    for (long m = -half; m < half; ++m) {
      csv << fnum(static_cast<double>(m) * g.freq_spacing()) << ","
          << fnum(std::abs(result.spectrum[g.storage_index(m)])) << "\n";
    }
    if (!csv) throw IoError("write failed: " + cfg.curve_csv);
  }
}

void cmd_figure(const Config& cfg) {
  if (cfg.which == "fig_decay") {
    // Decay factor against prototype bandwidth (band-shifted) and dilation.
    std::ofstream csv = open_csv(cfg.out);
    csv << "R,a1,r,a2\n";
    for (int k = 2; k <= 40; ++k) {
      const double R = cfg.delta * static_cast<double>(k) / 20.0;
      const double r = (20.0 + static_cast<double>(k)) / 20.0;
      csv << fnum(R) << "," << fnum(decay_factor_wh(R, cfg.delta)) << ","
          << fnum(r) << "," << fnum(decay_factor_wav(r)) << "\n";
    }
    if (!csv) throw IoError("write failed: " + cfg.out);
    return;
  }
  if (cfg.which == "fig_theta") {
    const WidthMinimum minimum =
        minimize_theta(cfg.depth, cfg.delta, cfg.L, cfg.step);
    write_theta_curve(minimum, cfg.out);
    return;
  }
  if (cfg.which == "fig_demod") {
    const Grid grid(cfg.samples, cfg.period);
    const FilterBank bank = build_from_params(cfg, grid);
    const Signal f = load_input(cfg, grid);
    const NonlinearitySpectrum squared = nonlinearity_spectrum_experiment(
        f, bank, cfg.lambda, Nonlinearity::squared_modulus, cfg.eta);
    const NonlinearitySpectrum mod = nonlinearity_spectrum_experiment(
        f, bank, cfg.lambda, Nonlinearity::modulus, cfg.eta);
    const NonlinearitySpectrum relu = nonlinearity_spectrum_experiment(
        f, bank, cfg.lambda, Nonlinearity::relu, cfg.eta);
    std::ofstream csv = open_csv(cfg.out);
    csv << "omega,squared,modulus,relu\n";
    const long half = static_cast<long>(grid.num_samples()) / 2;
    for (long m = -half; m < half; ++m) {
      const std::size_t i = grid.storage_index(m);
      csv << fnum(static_cast<double>(m) * grid.freq_spacing()) << ","
          << fnum(std::abs(squared.spectrum[i])) << ","
          << fnum(std::abs(mod.spectrum[i])) << ","
          << fnum(std::abs(relu.spectrum[i])) << "\n";
    }
    if (!csv) throw IoError("write failed: " + cfg.out);
    return;
  }
  throw std::invalid_argument("figure must be fig_decay, fig_theta, or fig_demod");
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Flat key=value defaults file, returned as --key=value tokens. Injected
// before explicit flags so the command line wins.
std::vector<std::string> read_config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line is not key=value: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                              (value.front() == '\'' && value.back() == '\''))) {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw std::invalid_argument("config line has an empty key: " + line);
    }
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

void add_input_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--input", cfg.input, "input signal CSV (one sample per line)");
  cmd->add_option("--gen", cfg.gen, "generator: gaussian|step|noise");
  cmd->add_option("--sigma", cfg.sigma, "gaussian width");
  cmd->add_option("--bandwidth", cfg.bandwidth, "noise bandwidth");
  cmd->add_option("--seed", cfg.seed, "noise seed");
}

void add_grid_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--samples", cfg.samples, "grid size (power of two)");
  cmd->add_option("--period", cfg.period, "signal period X");
}

void add_bank_param_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--flavor", cfg.flavor, "bank flavor: wh|wav");
  cmd->add_option("--R", cfg.R, "prototype bandwidth (wh)");
  cmd->add_option("--delta", cfg.delta, "spectral gap half-width (wh)");
  cmd->add_option("--r", cfg.r, "dilation factor (wav)");
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Scattering-network construction, propagation, and topology analysis"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CLI::App* bank = app.add_subcommand("bank", "build a filter bank and save it as JSON");
  add_bank_param_options(bank, cfg);
  add_grid_options(bank, cfg);
  bank->add_option("--out", cfg.out, "output bank JSON path")->required();

  CLI::App* run = app.add_subcommand("run", "propagate a signal through a saved bank");
  run->add_option("--bank", cfg.bank_path, "bank JSON path")->required();
  add_input_options(run, cfg);
  run->add_option("--depth", cfg.depth, "network depth N");
  run->add_flag("--prune,!--no-prune", cfg.prune, "mirror-twin pruning (default on)");
  run->add_option("--filter", cfg.filter, "node filter: significant|all");
  run->add_option("--sig-eta", cfg.sig_eta, "significance threshold");
  run->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  run->add_option("--gamma", cfg.gamma, "smoothness exponent for the decay fit");
  run->add_option("--report", cfg.report, "JSON report path (default stdout)");
  run->add_option("--energy-csv", cfg.energy_csv, "per-layer energy CSV path");

  CLI::App* count = app.add_subcommand("count", "per-layer significant node counts");
  add_bank_param_options(count, cfg);
  count->add_option("--L", cfg.L, "input effective bandwidth");
  count->add_option("--depth", cfg.depth, "network depth N");
  count->add_option("--method", cfg.method, "closed|rule|empirical");
  add_grid_options(count, cfg);
  add_input_options(count, cfg);
  count->add_option("--sig-eta", cfg.sig_eta, "significance threshold (empirical)");
  count->add_option("--report", cfg.report, "JSON report path (default stdout)");

  CLI::App* classify = app.add_subcommand("classify", "name the reduced network topology");
  add_bank_param_options(classify, cfg);
  classify->add_option("--L", cfg.L, "input effective bandwidth");
  classify->add_option("--depth", cfg.depth, "network depth N (wav)");
  classify->add_option("--report", cfg.report, "JSON report path (default stdout)");

  CLI::App* mintheta = app.add_subcommand(
      "minimize-theta", "minimize the average layer width over R");
  mintheta->add_option("--N,--depth", cfg.depth, "network depth N")->required();
  mintheta->add_option("--delta", cfg.delta, "spectral gap half-width");
  mintheta->add_option("--L", cfg.L, "input effective bandwidth")->required();
  mintheta->add_option("--step", cfg.step, "grid step (default delta/400)");
  mintheta->add_option("--curve-csv", cfg.curve_csv, "full curve CSV path");
  mintheta->add_option("--report", cfg.report, "JSON report path (default stdout)");

  CLI::App* design = app.add_subcommand(
      "design", "depth-constrained bank design with end-to-end validation");
  design->add_option("--flavor", cfg.flavor, "bank flavor: wh|wav");
  design->add_option("--epsilon", cfg.epsilon, "energy-capture slack");
  design->add_option("--depth", cfg.depth, "network depth N");
  design->add_option("--s", cfg.s, "Sobolev smoothness of the input class");
  design->add_option("--delta", cfg.delta, "spectral gap half-width (wh)");
  design->add_option("--l", cfg.l, "decay offset l (0 = default)");
  design->add_option("--sig-eta", cfg.sig_eta, "significance threshold");
  add_grid_options(design, cfg);
  add_input_options(design, cfg);
  design->add_option("--report", cfg.report, "JSON report path (default stdout)");

  CLI::App* demod = app.add_subcommand(
      "demod", "non-linearity output spectrum and effective support");
  add_bank_param_options(demod, cfg);
  add_grid_options(demod, cfg);
  add_input_options(demod, cfg);
  demod->add_option("--lambda", cfg.lambda, "filter index");
  demod->add_option("--nonlinearity", cfg.nonlinearity, "modulus|squared|relu");
  demod->add_option("--eta", cfg.eta, "support threshold");
  demod->add_option("--spectrum-csv", cfg.curve_csv, "output spectrum CSV path");
  demod->add_option("--report", cfg.report, "JSON report path (default stdout)");

  CLI::App* figure = app.add_subcommand("figure", "emit plot-ready CSV data");
  figure->add_option("--which", cfg.which, "fig_decay|fig_theta|fig_demod")
      ->required();
  figure->add_option("--out", cfg.out, "output CSV path")->required();
  add_bank_param_options(figure, cfg);
  figure->add_option("--L", cfg.L, "input effective bandwidth (fig_theta)");
  figure->add_option("--N,--depth", cfg.depth, "network depth (fig_theta)");
  figure->add_option("--step", cfg.step, "grid step (fig_theta)");
  add_grid_options(figure, cfg);
  add_input_options(figure, cfg);
  figure->add_option("--lambda", cfg.lambda, "filter index (fig_demod)");
  figure->add_option("--eta", cfg.eta, "support threshold (fig_demod)");

  const std::vector<CLI::App*> subs{bank, run,      count,  classify,
                                    mintheta, design, demod, figure};
  std::string config_doc;
  for (CLI::App* sub : subs) {
    sub->add_option("--config", config_doc,
                    "key=value defaults file; explicit flags win");
    for (CLI::Option* opt : sub->get_options()) {
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }
  }

  std::vector<std::string> tokens(argv + 1, argv + argc);
  try {
    // Expand --config into injected tokens ahead of the explicit flags so a
    // later (explicit) occurrence of the same option takes precedence.
    std::vector<std::string> injected;
    for (std::size_t i = 0; i < tokens.size();) {
      std::string path;
      const auto at = tokens.begin() + static_cast<std::ptrdiff_t>(i);
      if (tokens[i] == "--config" && i + 1 < tokens.size()) {
        path = tokens[i + 1];
        tokens.erase(at, at + 2);
      } else if (tokens[i].rfind("--config=", 0) == 0) {
        path = tokens[i].substr(9);
        tokens.erase(at);
      } else {
        ++i;
        continue;
      }
      const std::vector<std::string> pairs = read_config_tokens(path);
      injected.insert(injected.end(), pairs.begin(), pairs.end());
    }
    if (!injected.empty()) {
      const auto is_command = [&subs](const std::string& t) {
        return std::any_of(subs.begin(), subs.end(),
                           [&t](const CLI::App* s) { return s->get_name() == t; });
      };
      const auto pos = std::find_if(tokens.begin(), tokens.end(), is_command);
      if (pos != tokens.end()) {
        tokens.insert(pos + 1, injected.begin(), injected.end());
      }
    }
    std::reverse(tokens.begin(), tokens.end());
    app.parse(tokens);

    if (bank->parsed()) cmd_bank(cfg);
    if (run->parsed()) cmd_run(cfg);
    if (count->parsed()) cmd_count(cfg);
    if (classify->parsed()) cmd_classify(cfg);
    if (mintheta->parsed()) cmd_minimize_theta(cfg);
    if (design->parsed()) cmd_design(cfg);
    if (demod->parsed()) cmd_demod(cfg);
    if (figure->parsed()) cmd_figure(cfg);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << "{\"error\": \"" << jesc(e.what()) << "\"}\n";
    return 1;
  } catch (const IoError& e) {
    std::cout << "{\"error\": \"" << jesc(e.what()) << "\"}\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << "{\"error\": \"" << jesc(e.what()) << "\"}\n";
    return 1;
  }
  return 0;
}
