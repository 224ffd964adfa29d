#include "varconv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <random>
#include <sstream>
#include <thread>

#include "varconv/dyadic.hpp"
#include "varconv/error.hpp"
#include "varconv/fft.hpp"
#include "varconv/io.hpp"
#include "varconv/seqnorms.hpp"
#include "varconv/spectral.hpp"

namespace varconv {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
  return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

// Symbol for the averaging operator: (mu f)^(m) = a_m f^(m) with
// a_m = sum_j mu(j) e^{+2 pi i j m / M} = conj(DFT of the wrapped kernel).
std::vector<fft::cdouble> apply_symbol(const LatticeMeasure& mu, std::size_t M) {
  std::vector<fft::cdouble> w(M, fft::cdouble{});
  const auto& weights = mu.weights();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const std::int64_t j = mu.offset() + static_cast<std::int64_t>(i);
    std::int64_t r = j % static_cast<std::int64_t>(M);
    if (r < 0) r += static_cast<std::int64_t>(M);
    w[static_cast<std::size_t>(r)] += weights[i];
  }
  fft::transform(w, false);
  for (auto& v : w) v = std::conj(v);
  return w;
}

void run_trials(int trials, int threads, const std::function<void(int)>& body) {
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int workers = std::min(threads, trials);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) body(t);
    });
  }
  for (auto& th : pool) th.join();
}

std::int64_t family_support_width(const MeasureFamily& fam, int n_max) {
  std::int64_t w = 1;
  for (int i = 1; i <= n_max; ++i)
    w += static_cast<std::int64_t>(fam.factor(i).size()) - 1;
  return w;
}

// Theorem hypotheses: strict aperiodicity, zero expectation, moment-sum
// margins, and the Gaussian decay certificate. Throws on hard violations;
// the O(n) margins are reported, not asserted (O(n) is asymptotic).
nlohmann::json check_hypotheses(const MeasureFamily& fam, int n_max, std::size_t grid_size) {
  double sum_m2 = 0.0, sum_m2_sq = 0.0;
  double margin_m2 = 0.0, margin_m2_sq = 0.0;
  for (int i = 1; i <= n_max; ++i) {
    const LatticeMeasure nu = fam.factor(i);
    if (!nu.strictly_aperiodic())
      fail(errc::precondition_failed,
           "strict aperiodicity fails for factor " + std::to_string(i));
    if (std::abs(nu.expectation()) > 1e-12)
      fail(errc::precondition_failed,
           "zero-expectation hypothesis fails for factor " + std::to_string(i));
    const double m2 = nu.moment(2.0);
    sum_m2 += m2;
    sum_m2_sq += m2 * m2;
    margin_m2 = std::max(margin_m2, sum_m2 / i);
    margin_m2_sq = std::max(margin_m2_sq, sum_m2_sq / i);
  }
  const DecayCertificate cert = certify_family(fam, n_max, TorusGrid(grid_size));
  if (!cert.holds)
    fail(errc::precondition_failed, "Gaussian decay certificate fails for the family");
  return nlohmann::json{{"decay_N0", cert.N_0},
                        {"decay_best_C", cert.best_C},
                        {"max_sum_m2_over_n", margin_m2},
                        {"max_sum_m2_sq_over_n", margin_m2_sq}};
}

RatioChannel finalize_channel(std::string name, std::vector<std::vector<double>> ratios) {
  RatioChannel ch;
  ch.name = std::move(name);
  ch.ratios = std::move(ratios);
  for (const auto& level : ch.ratios) {
    double m = 0.0;
    for (double r : level) m = std::max(m, r);
    ch.growth.push_back(m);
  }
  const auto& last = ch.ratios.back();
  ch.max_ratio = ch.growth.back();
  ch.mean_ratio = 0.0;
  for (double r : last) ch.mean_ratio += r;
  ch.mean_ratio /= static_cast<double>(last.size());
  return ch;
}

} // namespace

CyclicField::CyclicField(std::size_t m, std::vector<double> v) : M(m), values(std::move(v)) {
  if (M == 0 || values.size() != M) fail(errc::size_mismatch, "field size mismatch");
}

CyclicField CyclicField::zeros(std::size_t M) {
  return CyclicField(M, std::vector<double>(M, 0.0));
}

CyclicField CyclicField::indicator(std::size_t M, std::size_t x) {
  CyclicField f = zeros(M);
  f.values.at(x) = 1.0;
  return f;
}

CyclicField CyclicField::random_unit(std::size_t M, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(M);
  for (auto& x : v) x = gauss(rng);
  CyclicField f(M, std::move(v));
  const double nrm = f.two_norm();
  for (auto& x : f.values) x /= nrm;
  return f;
}

double CyclicField::two_norm() const { return varconv::two_norm(values); }

CyclicField apply_measure_direct(const LatticeMeasure& mu, const CyclicField& f) {
  if (f.M == 0) fail(errc::size_mismatch, "empty field");
  const auto M = static_cast<std::int64_t>(f.M);
  std::vector<double> out(f.M, 0.0);
  const auto& w = mu.weights();
  for (std::int64_t x = 0; x < M; ++x) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::int64_t j = mu.offset() + static_cast<std::int64_t>(i);
      std::int64_t y = (x + j) % M;
      if (y < 0) y += M;
      s += w[i] * f.values[static_cast<std::size_t>(y)];
    }
    out[static_cast<std::size_t>(x)] = s;
  }
  return CyclicField(f.M, std::move(out));
}

CyclicField apply_measure(const LatticeMeasure& mu, const CyclicField& f) {
  if (f.M == 0) fail(errc::size_mismatch, "empty field");
  if (!fft::is_pow2(f.M)) return apply_measure_direct(mu, f);
  const auto sym = apply_symbol(mu, f.M);
  auto F = fft::forward_real(f.values);
  for (std::size_t m = 0; m < f.M; ++m) F[m] *= sym[m];
  fft::transform(F, true);
  std::vector<double> out(f.M);
  for (std::size_t m = 0; m < f.M; ++m) out[m] = F[m].real();
  return CyclicField(f.M, std::move(out));
}

CyclicField sfunc(const std::vector<CyclicField>& fields) {
  if (fields.empty()) fail(errc::size_mismatch, "square function of empty collection");
  const std::size_t M = fields.front().M;
  std::vector<double> acc(M, 0.0);
  for (const auto& f : fields) {
    if (f.M != M) fail(errc::size_mismatch, "fields have different sizes");
    for (std::size_t x = 0; x < M; ++x) acc[x] += f.values[x] * f.values[x];
  }
  for (auto& v : acc) v = std::sqrt(v);
  return CyclicField(M, std::move(acc));
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    if (j.contains("family")) cfg.family_spec = j.at("family");
    cfg.M = j.value("M", cfg.M);
    cfg.k_max = j.value("k_max", cfg.k_max);
    cfg.s = j.value("s", cfg.s);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.grid_size = j.value("grid", cfg.grid_size);
    cfg.threads = j.value("threads", cfg.threads);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::config_error, std::string("bad experiment config: ") + e.what());
  }
  return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
  return nlohmann::json{{"M", M},         {"family", family_spec}, {"grid", grid_size},
                        {"k_max", k_max}, {"s", s},                {"seed", seed},
                        {"threads", threads}, {"trials", trials}};
}

void ExperimentConfig::validate_common() const {
  if (M < 2 || !fft::is_pow2(M)) fail(errc::config_error, "M must be a power of two >= 2");
  if (k_max < 1 || k_max > 8) fail(errc::config_error, "k_max must lie in [1, 8]");
  if (trials < 1) fail(errc::config_error, "trials must be >= 1");
  if (threads < 1) fail(errc::config_error, "threads must be >= 1");
}

nlohmann::json RatioReport::to_json(bool with_timestamp) const {
  nlohmann::json chans = nlohmann::json::array();
  for (const auto& ch : channels) {
    chans.push_back({{"growth_curve", ch.growth},
                     {"max_ratio", ch.max_ratio},
                     {"mean_ratio", ch.mean_ratio},
                     {"name", ch.name},
                     {"ratios_per_level", ch.ratios}});
  }
  nlohmann::json out{{"channels", chans},
                     {"config", config.to_json()},
                     {"diagnostics", diagnostics},
                     {"experiment", experiment},
                     {"library_version", kLibraryVersion},
                     {"seed", config.seed},
                     {"wraparound", wraparound}};
  if (with_timestamp) {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    out["timestamp"] = buf;
  }
  return out;
}

std::string RatioReport::to_csv() const {
  std::ostringstream out;
  out << "experiment,channel,k_max,trial,ratio\n";
  for (const auto& ch : channels) {
    for (std::size_t level = 0; level < ch.ratios.size(); ++level) {
      for (std::size_t t = 0; t < ch.ratios[level].size(); ++t) {
        out << experiment << ',' << ch.name << ',' << (level + 1) << ',' << t << ','
            << io::format_g17(ch.ratios[level][t]) << '\n';
      }
    }
  }
  return out.str();
}

namespace {

// mu_n applied to f for n = 1..n_max, stored x-major: mat[x * n_max + (n-1)].
// Symbols are the cumulative products of the per-factor symbols.
struct OperatorBank {
  std::size_t M;
  int n_max;
  std::vector<std::vector<fft::cdouble>> symbols; // symbols[n-1] applies mu_n

  OperatorBank(const MeasureFamily& fam, int n_max_, std::size_t M_) : M(M_), n_max(n_max_) {
    symbols.reserve(static_cast<std::size_t>(n_max));
    std::vector<fft::cdouble> acc(M, fft::cdouble{1.0, 0.0});
    for (int n = 1; n <= n_max; ++n) {
      const auto fs = apply_symbol(fam.factor(n), M);
      for (std::size_t m = 0; m < M; ++m) acc[m] *= fs[m];
      symbols.push_back(acc);
    }
  }

  std::vector<double> apply_all(const CyclicField& f) const {
    std::vector<double> mat(M * static_cast<std::size_t>(n_max));
    const auto F = fft::forward_real(f.values);
    std::vector<fft::cdouble> buf(M);
    for (int n = 1; n <= n_max; ++n) {
      const auto& sym = symbols[static_cast<std::size_t>(n - 1)];
      for (std::size_t m = 0; m < M; ++m) buf[m] = sym[m] * F[m];
      fft::transform(buf, true);
      for (std::size_t x = 0; x < M; ++x)
        mat[x * static_cast<std::size_t>(n_max) + static_cast<std::size_t>(n - 1)] =
            buf[x].real();
    }
    return mat;
  }
};

} // namespace

RatioReport theorem17_experiment(const ExperimentConfig& cfg) {
  cfg.validate_common();
  if (!(cfg.s > 2.0))
    fail(errc::config_error, "theorem17 requires the variation exponent s > 2");
  MeasureFamily fam = io::family_from_json(cfg.family_spec);
  const int n_max = static_cast<int>(pow4(cfg.k_max)) - 1;

  RatioReport rep;
  rep.experiment = "theorem17";
  rep.config = cfg;
  rep.diagnostics = check_hypotheses(fam, n_max, cfg.grid_size);
  rep.wraparound = family_support_width(fam, n_max) > static_cast<std::int64_t>(cfg.M);

  const OperatorBank bank(fam, n_max, cfg.M);
  std::vector<std::size_t> lens;
  std::vector<std::vector<std::int64_t>> level_bp;
  for (int k = 1; k <= cfg.k_max; ++k) {
    lens.push_back(static_cast<std::size_t>(pow4(k)) - 1);
    level_bp.push_back(pow4_breakpoints(lens.back()));
  }

  const auto levels = static_cast<std::size_t>(cfg.k_max);
  std::vector<std::vector<double>> v_ratios(levels, std::vector<double>(cfg.trials, 0.0));
  std::vector<std::vector<double>> o_ratios(levels, std::vector<double>(cfg.trials, 0.0));

  run_trials(cfg.trials, cfg.threads, [&](int t) {
    const CyclicField f = CyclicField::random_unit(cfg.M, trial_seed(cfg.seed, t));
    const auto mat = bank.apply_all(f);
    std::vector<double> v_sq(levels, 0.0), o_sq(levels, 0.0);
    for (std::size_t x = 0; x < cfg.M; ++x) {
      const std::span<const double> seq(mat.data() + x * static_cast<std::size_t>(n_max),
                                        static_cast<std::size_t>(n_max));
      const auto v_vals = prefix_variation_values(seq, cfg.s, lens);
      for (std::size_t l = 0; l < levels; ++l) {
        v_sq[l] += v_vals[l] * v_vals[l];
        const double o = oscillation_norm(seq.first(lens[l]), level_bp[l], 2.0).value;
        o_sq[l] += o * o;
      }
    }
    const double fn = f.two_norm();
    for (std::size_t l = 0; l < levels; ++l) {
      v_ratios[l][static_cast<std::size_t>(t)] = std::sqrt(v_sq[l]) / fn;
      o_ratios[l][static_cast<std::size_t>(t)] = std::sqrt(o_sq[l]) / fn;
    }
  });

  rep.channels.push_back(finalize_channel("v_s", std::move(v_ratios)));
  rep.channels.push_back(finalize_channel("o_2", std::move(o_ratios)));
  return rep;
}

RatioReport theorem133_experiment(const ExperimentConfig& cfg) {
  cfg.validate_common();
  MeasureFamily fam = io::family_from_json(cfg.family_spec);
  const int n_top = static_cast<int>(pow4(cfg.k_max));

  RatioReport rep;
  rep.experiment = "theorem133";
  rep.config = cfg;
  rep.diagnostics = check_hypotheses(fam, n_top, cfg.grid_size);
  rep.wraparound = 2 * family_support_width(fam, n_top) - 1 >
                   static_cast<std::int64_t>(cfg.M); // lambda doubles the support

  // difference symbols mu_{4^k} - lambda_{4^k} per level
  std::vector<std::vector<fft::cdouble>> diff_syms;
  for (int k = 1; k <= cfg.k_max; ++k) {
    const LatticeMeasure mu = fam.prefix_product(static_cast<int>(pow4(k)));
    const LatticeMeasure lambda = mu.symmetrize();
    auto a = apply_symbol(mu, cfg.M);
    const auto b = apply_symbol(lambda, cfg.M);
    for (std::size_t m = 0; m < cfg.M; ++m) a[m] -= b[m];
    diff_syms.push_back(std::move(a));
  }

  const auto levels = static_cast<std::size_t>(cfg.k_max);
  std::vector<std::vector<double>> ratios(levels, std::vector<double>(cfg.trials, 0.0));

  run_trials(cfg.trials, cfg.threads, [&](int t) {
    const CyclicField f = CyclicField::random_unit(cfg.M, trial_seed(cfg.seed, t));
    const auto F = fft::forward_real(f.values);
    std::vector<fft::cdouble> buf(cfg.M);
    double cum = 0.0;
    for (std::size_t l = 0; l < levels; ++l) {
      for (std::size_t m = 0; m < cfg.M; ++m) buf[m] = diff_syms[l][m] * F[m];
      fft::transform(buf, true);
      for (std::size_t x = 0; x < cfg.M; ++x) cum += buf[x].real() * buf[x].real();
      ratios[l][static_cast<std::size_t>(t)] = std::sqrt(cum) / f.two_norm();
    }
  });

  rep.channels.push_back(finalize_channel("square_function", std::move(ratios)));
  return rep;
}

RatioReport theorem141_experiment(const ExperimentConfig& cfg) {
  cfg.validate_common();
  MeasureFamily fam = io::family_from_json(cfg.family_spec);
  const int n_max = static_cast<int>(pow4(cfg.k_max)) - 1;

  RatioReport rep;
  rep.experiment = "theorem141";
  rep.config = cfg;
  rep.diagnostics = check_hypotheses(fam, n_max, cfg.grid_size);
  rep.wraparound = family_support_width(fam, n_max) > static_cast<std::int64_t>(cfg.M);

  const OperatorBank bank(fam, n_max, cfg.M);
  const auto levels = static_cast<std::size_t>(cfg.k_max);
  std::vector<std::vector<double>> ratios(levels, std::vector<double>(cfg.trials, 0.0));
  std::vector<double> kn_discrepancy(cfg.trials, 0.0);

  run_trials(cfg.trials, cfg.threads, [&](int t) {
    const CyclicField f = CyclicField::random_unit(cfg.M, trial_seed(cfg.seed, t));
    const auto mat = bank.apply_all(f);
    std::vector<double> cum_sq(levels, 0.0);
    double disc = 0.0;
    std::vector<double> shifted;
    for (std::size_t x = 0; x < cfg.M; ++x) {
      const double* seq = mat.data() + x * static_cast<std::size_t>(n_max);
      for (std::size_t k = 1; k <= levels; ++k) {
        const auto lo = static_cast<std::size_t>(pow4(static_cast<int>(k) - 1)) - 1;
        const auto hi = static_cast<std::size_t>(pow4(static_cast<int>(k))) - 1;
        const std::span<const double> block(seq + lo, hi - lo);
        const std::size_t full = block.size();
        const double v = prefix_variation_values(block, 2.0, {&full, 1})[0];
        cum_sq[k - 1] += v * v;
        // K_n f block: subtract the block-constant mu_{4^{k-1}} f
        shifted.assign(block.begin(), block.end());
        for (auto& y : shifted) y -= seq[lo];
        const double vk = prefix_variation_values(shifted, 2.0, {&full, 1})[0];
        disc = std::max(disc, std::abs(v - vk));
      }
    }
    for (std::size_t l = 1; l < levels; ++l) cum_sq[l] += cum_sq[l - 1];
    const double fn = f.two_norm();
    for (std::size_t l = 0; l < levels; ++l)
      ratios[l][static_cast<std::size_t>(t)] = std::sqrt(cum_sq[l]) / fn;
    kn_discrepancy[static_cast<std::size_t>(t)] = disc;
  });

  rep.channels.push_back(finalize_channel("block_v2", std::move(ratios)));
  double max_disc = 0.0;
  for (double d : kn_discrepancy) max_disc = std::max(max_disc, d);
  rep.diagnostics["max_mu_vs_K_block_variation_discrepancy"] = max_disc;
  return rep;
}

nlohmann::json counterexample_explorer(const ASequence& a, int n_max) {
  if (n_max < 1) fail(errc::parameter_out_of_range, "n_max must be >= 1");
  MeasureFamily fam = MeasureFamily::remark19(a);
  const TorusGrid grid(256);
  nlohmann::json rows = nlohmann::json::array();
  double partial = 1.0;
  double sum_m2 = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double an = a.at(n);
    partial *= an;
    sum_m2 += 1.0 - an;
    const LatticeMeasure nu = fam.factor(n);
    const LatticeMeasure mu = fam.prefix_product(n);
    const double mu_at_0 = mu.at(0);
    if (mu_at_0 < partial - 1e-12)
      fail(errc::precondition_failed,
           "mu_n(0) fell below the partial product of a_i at n = " + std::to_string(n));
    // alternating sum = nu_hat at |t| = 1/2
    double alt = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
      const std::int64_t k = nu.offset() + static_cast<std::int64_t>(i);
      alt += ((k & 1) ? -1.0 : 1.0) * nu.weights()[i];
    }
    const DecayCertificate cert = gaussian_decay(nu, grid);
    rows.push_back({{"a_n", an},
                    {"abs_nu_hat_half", std::abs(alt)},
                    {"coset_mass_2Z_plus_1", nu.coset_mass(2, 1)},
                    {"decay_best_C", cert.best_C},
                    {"decay_holds", cert.holds},
                    {"expected_abs_nu_hat_half", std::abs(2.0 * an - 1.0)},
                    {"m2_mu_n", mu.moment(2.0)},
                    {"mu_n_at_0", mu_at_0},
                    {"n", n},
                    {"partial_product", partial},
                    {"sum_one_minus_a", sum_m2}});
  }
  return nlohmann::json{{"family", "remark19"},
                        {"library_version", kLibraryVersion},
                        {"n_max", n_max},
                        {"rows", rows}};
}

} // namespace varconv
