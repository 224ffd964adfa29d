#include "varconv/varconv.h"

#include <cstring>
#include <string>

#include "varconv/dyadic.hpp"
#include "varconv/error.hpp"
#include "varconv/harness.hpp"
#include "varconv/io.hpp"
#include "varconv/measure.hpp"
#include "varconv/seqnorms.hpp"
#include "varconv/spectral.hpp"

using namespace varconv;

struct vc_measure {
  LatticeMeasure value;
};

struct vc_family {
  MeasureFamily value;
};

namespace {

thread_local std::string g_last_error;

vc_status status_of(errc code) {
  switch (code) {
    case errc::precondition_failed:
      return VC_ERR_PRECONDITION;
    case errc::io_error:
      return VC_ERR_INPUT;
    default:
      return VC_ERR_CONFIG;
  }
}

template <typename Fn>
vc_status guarded(Fn&& fn) {
  try {
    fn();
    return VC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

} // namespace

extern "C" {

const char* vc_last_error(void) { return g_last_error.c_str(); }

void vc_string_free(char* s) { delete[] s; }

vc_status vc_measure_create(const int64_t* points, const double* masses, size_t count,
                            vc_measure** out) {
  return guarded([&] {
    if (!points || !masses || !out) fail(errc::config_error, "null argument");
    std::vector<std::pair<std::int64_t, double>> pts;
    pts.reserve(count);
    for (size_t i = 0; i < count; ++i) pts.emplace_back(points[i], masses[i]);
    *out = new vc_measure{LatticeMeasure::from_points(pts)};
  });
}

vc_status vc_measure_from_tsv(const char* path, vc_measure** out) {
  return guarded([&] {
    if (!path || !out) fail(errc::config_error, "null argument");
    *out = new vc_measure{io::measure_from_tsv_file(path)};
  });
}

vc_status vc_measure_to_tsv(const vc_measure* mu, const char* path) {
  return guarded([&] {
    if (!mu || !path) fail(errc::config_error, "null argument");
    io::measure_to_tsv_file(mu->value, path);
  });
}

void vc_measure_free(vc_measure* mu) { delete mu; }

int64_t vc_measure_offset(const vc_measure* mu) { return mu ? mu->value.offset() : 0; }

size_t vc_measure_size(const vc_measure* mu) { return mu ? mu->value.size() : 0; }

vc_status vc_measure_weights(const vc_measure* mu, double* buf, size_t len) {
  return guarded([&] {
    if (!mu || !buf) fail(errc::config_error, "null argument");
    if (len < mu->value.size()) fail(errc::config_error, "buffer too small");
    std::memcpy(buf, mu->value.weights().data(), mu->value.size() * sizeof(double));
  });
}

vc_status vc_convolve(const vc_measure* a, const vc_measure* b, vc_measure** out) {
  return guarded([&] {
    if (!a || !b || !out) fail(errc::config_error, "null argument");
    *out = new vc_measure{convolve(a->value, b->value)};
  });
}

vc_status vc_reflect(const vc_measure* mu, vc_measure** out) {
  return guarded([&] {
    if (!mu || !out) fail(errc::config_error, "null argument");
    *out = new vc_measure{mu->value.reflect()};
  });
}

vc_status vc_symmetrize(const vc_measure* mu, vc_measure** out) {
  return guarded([&] {
    if (!mu || !out) fail(errc::config_error, "null argument");
    *out = new vc_measure{mu->value.symmetrize()};
  });
}

vc_status vc_moment(const vc_measure* mu, double p, double* out) {
  return guarded([&] {
    if (!mu || !out) fail(errc::config_error, "null argument");
    *out = mu->value.moment(p);
  });
}

vc_status vc_expectation(const vc_measure* mu, double* out) {
  return guarded([&] {
    if (!mu || !out) fail(errc::config_error, "null argument");
    *out = mu->value.expectation();
  });
}

vc_status vc_is_strictly_aperiodic(const vc_measure* mu, int* out) {
  return guarded([&] {
    if (!mu || !out) fail(errc::config_error, "null argument");
    *out = mu->value.strictly_aperiodic() ? 1 : 0;
  });
}

vc_status vc_coset_concentration(const vc_measure* mu, int beta_max, double* value,
                                 int* beta, int* alpha) {
  return guarded([&] {
    if (!mu || !value || !beta || !alpha) fail(errc::config_error, "null argument");
    const CosetConcentration c = mu->value.coset_concentration(beta_max);
    *value = c.value;
    *beta = c.beta;
    *alpha = c.alpha;
  });
}

vc_status vc_family_from_json(const char* json, vc_family** out) {
  return guarded([&] {
    if (!json || !out) fail(errc::config_error, "null argument");
    *out = new vc_family{io::family_from_json_text(json)};
  });
}

void vc_family_free(vc_family* fam) { delete fam; }

vc_status vc_family_factor(const vc_family* fam, int i, vc_measure** out) {
  return guarded([&] {
    if (!fam || !out) fail(errc::config_error, "null argument");
    *out = new vc_measure{fam->value.factor(i)};
  });
}

vc_status vc_family_prefix_product(const vc_family* fam, int n, vc_measure** out) {
  return guarded([&] {
    if (!fam || !out) fail(errc::config_error, "null argument");
    *out = new vc_measure{fam->value.prefix_product(n)};
  });
}

vc_status vc_variation_norm(const double* xs, size_t n, double rho, double* value,
                            size_t* witness, size_t witness_cap, size_t* witness_len) {
  return guarded([&] {
    if (!xs || !value) fail(errc::config_error, "null argument");
    const NormResult r = variation_norm({xs, n}, rho);
    *value = r.value;
    if (witness && witness_len) {
      const size_t m = std::min(witness_cap, r.witness.size());
      std::memcpy(witness, r.witness.data(), m * sizeof(size_t));
      *witness_len = r.witness.size();
    }
  });
}

vc_status vc_variation_norm_bruteforce(const double* xs, size_t n, double rho, double* value) {
  return guarded([&] {
    if (!xs || !value) fail(errc::config_error, "null argument");
    *value = variation_norm_bruteforce({xs, n}, rho).value;
  });
}

vc_status vc_oscillation_norm(const double* xs, size_t n, const int64_t* breakpoints,
                              size_t n_breakpoints, double s, double* value) {
  return guarded([&] {
    if (!xs || !breakpoints || !value) fail(errc::config_error, "null argument");
    *value = oscillation_norm({xs, n}, {breakpoints, n_breakpoints}, s).value;
  });
}

vc_status vc_two_norm(const double* xs, size_t n, double* out) {
  return guarded([&] {
    if (!out || (!xs && n > 0)) fail(errc::config_error, "null argument");
    *out = two_norm({xs, n});
  });
}

vc_status vc_spectrum_csv(const vc_measure* mu, size_t grid_size, char** csv) {
  return guarded([&] {
    if (!mu || !csv) fail(errc::config_error, "null argument");
    const TorusGrid grid(grid_size);
    const SpectralSamples s = char_fun(mu->value, grid);
    std::string out = "t,re,im,abs\n";
    for (std::size_t m = 0; m < grid.size(); ++m) {
      out += io::format_g17(grid.node(m));
      out += ',';
      out += io::format_g17(s.values[m].real());
      out += ',';
      out += io::format_g17(s.values[m].imag());
      out += ',';
      out += io::format_g17(std::abs(s.values[m]));
      out += '\n';
    }
    *csv = dup_string(out);
  });
}

vc_status vc_gaussian_decay(const vc_measure* mu, size_t grid_size, double* best_c,
                            int* holds, double* worst_node) {
  return guarded([&] {
    if (!mu || !best_c || !holds || !worst_node) fail(errc::config_error, "null argument");
    const DecayCertificate c = gaussian_decay(mu->value, TorusGrid(grid_size));
    *best_c = c.best_C;
    *holds = c.holds ? 1 : 0;
    *worst_node = c.worst_node;
  });
}

vc_status vc_lemma132_ratio(const vc_family* fam, int n, size_t grid_size, double c,
                            double* out) {
  return guarded([&] {
    if (!fam || !out) fail(errc::config_error, "null argument");
    *out = lemma132_ratio(fam->value, n, TorusGrid(grid_size), c);
  });
}

vc_status vc_decompose_csv(const char* family_json, int k, int j_min, int j_max,
                           size_t grid_size, int full_sweep, uint64_t seed, char** csv) {
  return guarded([&] {
    if (!family_json || !csv) fail(errc::config_error, "null argument");
    if (j_min > j_max) fail(errc::config_error, "empty j range");
    MeasureFamily fam = io::family_from_json_text(family_json);
    const TorusGrid grid(grid_size);
    std::string out = "j,k,lemma147_part1_constant\n";
    for (int j = j_min; j <= j_max; ++j) {
      const double c1 = lemma147_part1(fam, j, k, grid, seed, full_sweep != 0);
      out += std::to_string(j);
      out += ',';
      out += std::to_string(k);
      out += ',';
      out += io::format_g17(c1);
      out += '\n';
    }
    *csv = dup_string(out);
  });
}

vc_status vc_verify_json(const char* experiment, const char* config_json,
                         int with_timestamp, char** report_json, char** report_csv) {
  return guarded([&] {
    if (!experiment || !config_json || !report_json) fail(errc::config_error, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config_json);
    } catch (const std::exception& e) {
      fail(errc::config_error, std::string("bad config JSON: ") + e.what());
    }
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    const std::string which = experiment;
    RatioReport rep;
    if (which == "theorem17") {
      rep = theorem17_experiment(cfg);
    } else if (which == "theorem133") {
      rep = theorem133_experiment(cfg);
    } else if (which == "theorem141") {
      rep = theorem141_experiment(cfg);
    } else {
      fail(errc::config_error, "unknown experiment: " + which);
    }
    *report_json = dup_string(rep.to_json(with_timestamp != 0).dump(2) + "\n");
    if (report_csv) *report_csv = dup_string(rep.to_csv());
  });
}

vc_status vc_explore_counterexample_json(const char* family_json, int n_max,
                                         char** report_json) {
  return guarded([&] {
    if (!family_json || !report_json) fail(errc::config_error, "null argument");
    nlohmann::json spec;
    try {
      spec = nlohmann::json::parse(family_json);
    } catch (const std::exception& e) {
      fail(errc::config_error, std::string("bad family JSON: ") + e.what());
    }
    if (spec.value("family", "") != "remark19")
      fail(errc::config_error, "explore-counterexample needs a remark19 family");
    const nlohmann::json params = spec.value("params", nlohmann::json::object());
    const ASequence a = params.contains("a") ? io::a_sequence_from_json(params.at("a"))
                                             : ASequence::inv_square();
    *report_json = dup_string(counterexample_explorer(a, n_max).dump(2) + "\n");
  });
}

} // extern "C"
