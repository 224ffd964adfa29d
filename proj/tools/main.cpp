// varconv command-line front end; all computation goes through the C API.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "varconv/varconv.h"

namespace {

int exit_code_of(vc_status st) {
  switch (st) {
    case VC_OK:
      return 0;
    case VC_ERR_INPUT:
      return 2;
    case VC_ERR_PRECONDITION:
      return 3;
    default:
      return 1;
  }
}

int report_failure(vc_status st) {
  std::cerr << "error: " << vc_last_error() << "\n";
  return exit_code_of(st);
}

bool read_sequence(const std::string& path, std::vector<double>& xs) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    double v;
    if (ls >> v) xs.push_back(v);
  }
  return true;
}

bool read_text(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return true;
}

bool parse_breakpoints(const std::string& spec, std::size_t n, std::vector<int64_t>& bp) {
  if (spec == "4^k") {
    for (int64_t b = 1; static_cast<std::size_t>(b) <= n; b *= 4) bp.push_back(b);
    return !bp.empty();
  }
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      bp.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      return false;
    }
  }
  return !bp.empty();
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text(out_path, content);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"varconv: convolution products, variation/oscillation norms, and "
               "desk-scale verification on the cyclic shift"};
  app.require_subcommand(1);

  // convolve
  std::string cv_a, cv_b, cv_out;
  auto* convolve = app.add_subcommand("convolve", "convolve two measure TSV files");
  convolve->add_option("a", cv_a, "first measure (TSV)")->required();
  convolve->add_option("b", cv_b, "second measure (TSV)")->required();
  convolve->add_option("-o,--output", cv_out, "output TSV")->required();

  // norms
  std::string nm_seq, nm_blocks, nm_out;
  double nm_rho = 2.0, nm_s = 2.0;
  bool nm_oracle = false;
  auto* norms = app.add_subcommand("norms", "variation/oscillation norms of a sequence CSV");
  norms->add_option("sequence", nm_seq, "sequence CSV, one value per line")->required();
  norms->add_option("--rho", nm_rho, "variation exponent rho >= 1");
  norms->add_option("--s", nm_s, "oscillation exponent s >= 1");
  norms->add_option("--blocks", nm_blocks, "breakpoints: \"4^k\" or comma list");
  norms->add_flag("--oracle", nm_oracle, "cross-check against brute-force enumeration");
  norms->add_option("-o,--output", nm_out, "output JSON (default stdout)");

  // spectrum
  std::string sp_measure, sp_out;
  std::size_t sp_grid = 1024;
  auto* spectrum = app.add_subcommand("spectrum",
                                      "characteristic function on the torus grid + decay certificate");
  spectrum->add_option("measure", sp_measure, "measure TSV")->required();
  spectrum->add_option("--grid", sp_grid, "grid size (power of two >= 8)");
  spectrum->add_option("-o,--output", sp_out, "spectral CSV output (default stdout)");

  // decompose
  std::string dc_family, dc_jrange = "-2:4", dc_out;
  int dc_k = 2;
  std::size_t dc_grid = 1024;
  bool dc_full = false;
  std::uint64_t dc_seed = 0x5eed;
  auto* decompose = app.add_subcommand("decompose",
                                       "dyadic block-kernel boundedness constants");
  decompose->add_option("--family", dc_family, "family spec JSON file")->required();
  decompose->add_option("--k", dc_k, "dyadic level k >= 1");
  decompose->add_option("--j-range", dc_jrange, "j range as \"min:max\"");
  decompose->add_option("--grid", dc_grid, "grid size");
  decompose->add_option("--seed", dc_seed, "seed for interior n sampling");
  decompose->add_flag("--full-sweep", dc_full, "evaluate every n in the block");
  decompose->add_option("-o,--output", dc_out, "output CSV (default stdout)");

  // verify
  std::string vf_experiment, vf_config, vf_out, vf_csv, vf_format = "json";
  bool vf_no_timestamp = false;
  std::uint64_t vf_seed = 0;
  int vf_threads = 0, vf_kmax = 0, vf_trials = 0;
  double vf_s = 0.0;
  std::size_t vf_m = 0, vf_grid = 0;
  auto* verify = app.add_subcommand("verify", "run a theorem-inequality experiment");
  verify->add_option("--experiment", vf_experiment, "theorem17 | theorem133 | theorem141")
      ->required();
  verify->add_option("--config", vf_config, "ExperimentConfig JSON file")->required();
  verify->add_option("-o,--output", vf_out, "report JSON (default stdout)");
  verify->add_option("--csv", vf_csv, "companion CSV for plotting");
  verify->add_option("--format", vf_format, "stdout format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_flag("--no-timestamp", vf_no_timestamp, "omit the timestamp field");
  verify->add_option("--seed", vf_seed, "override config seed");
  verify->add_option("--threads", vf_threads, "override worker count");
  verify->add_option("--M", vf_m, "override system size");
  verify->add_option("--k-max", vf_kmax, "override highest dyadic level");
  verify->add_option("--s", vf_s, "override variation exponent");
  verify->add_option("--trials", vf_trials, "override trial count");
  verify->add_option("--grid", vf_grid, "override spectral grid size");

  // explore-counterexample
  std::string ex_family, ex_out;
  int ex_nmax = 64;
  auto* explore = app.add_subcommand("explore-counterexample",
                                     "remark19 family diagnostics");
  explore->add_option("--family", ex_family, "remark19 family spec JSON file")->required();
  explore->add_option("--n-max", ex_nmax, "largest n to report");
  explore->add_option("-o,--output", ex_out, "output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (convolve->parsed()) {
    vc_measure *a = nullptr, *b = nullptr, *c = nullptr;
    vc_status st = vc_measure_from_tsv(cv_a.c_str(), &a);
    if (st == VC_OK) st = vc_measure_from_tsv(cv_b.c_str(), &b);
    if (st == VC_OK) st = vc_convolve(a, b, &c);
    if (st == VC_OK) st = vc_measure_to_tsv(c, cv_out.c_str());
    vc_measure_free(a);
    vc_measure_free(b);
    vc_measure_free(c);
    return st == VC_OK ? 0 : report_failure(st);
  }

  if (norms->parsed()) {
    std::vector<double> xs;
    if (!read_sequence(nm_seq, xs) || xs.empty()) {
      std::cerr << "error: cannot read sequence from " << nm_seq << "\n";
      return 2;
    }
    nlohmann::json out;
    double value = 0.0;
    std::vector<std::size_t> witness(xs.size());
    std::size_t wlen = 0;
    vc_status st = vc_variation_norm(xs.data(), xs.size(), nm_rho, &value, witness.data(),
                                     witness.size(), &wlen);
    if (st != VC_OK) return report_failure(st);
    witness.resize(wlen);
    out["variation"] = {{"rho", nm_rho}, {"value", value}, {"witness", witness}};
    if (nm_oracle) {
      double oracle = 0.0;
      st = vc_variation_norm_bruteforce(xs.data(), xs.size(), nm_rho, &oracle);
      if (st != VC_OK) return report_failure(st);
      out["variation"]["oracle"] = oracle;
      out["variation"]["oracle_abs_diff"] = std::abs(oracle - value);
    }
    if (!nm_blocks.empty()) {
      std::vector<int64_t> bp;
      if (!parse_breakpoints(nm_blocks, xs.size(), bp)) {
        std::cerr << "error: bad --blocks spec\n";
        return 1;
      }
      double osc = 0.0;
      st = vc_oscillation_norm(xs.data(), xs.size(), bp.data(), bp.size(), nm_s, &osc);
      if (st != VC_OK) return report_failure(st);
      out["oscillation"] = {{"breakpoints", bp}, {"s", nm_s}, {"value", osc}};
    }
    double tn = 0.0;
    vc_two_norm(xs.data(), xs.size(), &tn);
    out["two_norm"] = tn;
    emit(out.dump(2) + "\n", nm_out);
    return 0;
  }

  if (spectrum->parsed()) {
    vc_measure* mu = nullptr;
    vc_status st = vc_measure_from_tsv(sp_measure.c_str(), &mu);
    if (st != VC_OK) return report_failure(st);
    char* csv = nullptr;
    st = vc_spectrum_csv(mu, sp_grid, &csv);
    double best_c = 0.0, worst = 0.0;
    int holds = 0;
    if (st == VC_OK) st = vc_gaussian_decay(mu, sp_grid, &best_c, &holds, &worst);
    vc_measure_free(mu);
    if (st != VC_OK) {
      vc_string_free(csv);
      return report_failure(st);
    }
    emit(csv, sp_out);
    vc_string_free(csv);
    const nlohmann::json cert{{"best_C", best_c}, {"holds", holds != 0},
                              {"worst_node", worst}, {"grid", sp_grid},
                              {"note", "grid-sampled certificate, not a rigorous bound"}};
    if (!sp_out.empty()) std::cout << cert.dump(2) << "\n";
    return 0;
  }

  if (decompose->parsed()) {
    std::string family_json;
    if (!read_text(dc_family, family_json)) {
      std::cerr << "error: cannot read " << dc_family << "\n";
      return 2;
    }
    int j_min = 0, j_max = 0;
    if (std::sscanf(dc_jrange.c_str(), "%d:%d", &j_min, &j_max) != 2) {
      std::cerr << "error: --j-range must look like \"min:max\"\n";
      return 1;
    }
    char* csv = nullptr;
    const vc_status st = vc_decompose_csv(family_json.c_str(), dc_k, j_min, j_max, dc_grid,
                                          dc_full ? 1 : 0, dc_seed, &csv);
    if (st != VC_OK) return report_failure(st);
    emit(csv, dc_out);
    vc_string_free(csv);
    return 0;
  }

  if (verify->parsed()) {
    std::string cfg_text;
    if (!read_text(vf_config, cfg_text)) {
      std::cerr << "error: cannot read " << vf_config << "\n";
      return 2;
    }
    nlohmann::json cfg;
    try {
      cfg = nlohmann::json::parse(cfg_text);
    } catch (const std::exception& e) {
      std::cerr << "error: bad config JSON: " << e.what() << "\n";
      return 2;
    }
    if (verify->count("--seed") > 0) cfg["seed"] = vf_seed;
    if (vf_threads > 0) cfg["threads"] = vf_threads;
    if (vf_m > 0) cfg["M"] = vf_m;
    if (vf_kmax > 0) cfg["k_max"] = vf_kmax;
    if (vf_s > 0.0) cfg["s"] = vf_s;
    if (vf_trials > 0) cfg["trials"] = vf_trials;
    if (vf_grid > 0) cfg["grid"] = vf_grid;
    char* report = nullptr;
    char* csv = nullptr;
    const vc_status st = vc_verify_json(vf_experiment.c_str(), cfg.dump().c_str(),
                                        vf_no_timestamp ? 0 : 1, &report,
                                        vf_csv.empty() && vf_format != "csv" ? nullptr : &csv);
    if (st != VC_OK) return report_failure(st);
    if (vf_format == "csv" && vf_out.empty()) {
      std::cout << csv;
    } else {
      emit(report, vf_out);
    }
    if (!vf_csv.empty()) write_text(vf_csv, csv);
    vc_string_free(report);
    vc_string_free(csv);
    return 0;
  }

  if (explore->parsed()) {
    std::string family_json;
    if (!read_text(ex_family, family_json)) {
      std::cerr << "error: cannot read " << ex_family << "\n";
      return 2;
    }
    char* report = nullptr;
    const vc_status st = vc_explore_counterexample_json(family_json.c_str(), ex_nmax, &report);
    if (st != VC_OK) return report_failure(st);
    emit(report, ex_out);
    vc_string_free(report);
    return 0;
  }

  return 1;
}
