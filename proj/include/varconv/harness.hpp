#ifndef VARCONV_HARNESS_HPP
#define VARCONV_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "varconv/measure.hpp"

namespace varconv {

// Element of l2(Z_M) under the cyclic shift x -> x + 1 mod M; counting
// measure, no 1/M normalization.
struct CyclicField {
  std::size_t M = 0;
  std::vector<double> values;

  CyclicField() = default;
  CyclicField(std::size_t m, std::vector<double> v);
  static CyclicField zeros(std::size_t M);
  static CyclicField indicator(std::size_t M, std::size_t x);
  static CyclicField random_unit(std::size_t M, std::uint64_t seed);

  double two_norm() const;
};

// (mu f)(x) = sum_j mu(j) f(x + j mod M), through the frequency domain.
CyclicField apply_measure(const LatticeMeasure& mu, const CyclicField& f);
CyclicField apply_measure_direct(const LatticeMeasure& mu, const CyclicField& f);

// pointwise square function of a collection of fields on the same Z_M
CyclicField sfunc(const std::vector<CyclicField>& fields);

struct ExperimentConfig {
  nlohmann::json family_spec = {{"family", "lazy-walk"}, {"params", {{"p", 0.5}}}};
  std::size_t M = 4096;      // power of two
  int k_max = 3;             // n ranges to 4^k_max - 1
  double s = 3.0;            // variation exponent, > 2 for theorem17
  int trials = 20;
  std::uint64_t seed = 1;
  std::size_t grid_size = 1024; // spectral sub-checks
  int threads = 1;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate_common() const;
};

struct RatioChannel {
  std::string name;
  // ratios[level][trial], level index 0 is k_max = 1
  std::vector<std::vector<double>> ratios;
  std::vector<double> growth; // max over trials per level
  double max_ratio = 0.0;     // at the deepest level
  double mean_ratio = 0.0;
};

struct RatioReport {
  std::string experiment;
  ExperimentConfig config;
  std::vector<RatioChannel> channels;
  nlohmann::json diagnostics; // precondition margins, empirical constants
  bool wraparound = false;

  nlohmann::json to_json(bool with_timestamp = false) const;
  std::string to_csv() const; // one row per (channel, k_max, trial, ratio)
};

inline constexpr const char* kLibraryVersion = "0.1.0";

RatioReport theorem17_experiment(const ExperimentConfig& cfg);
RatioReport theorem133_experiment(const ExperimentConfig& cfg);
RatioReport theorem141_experiment(const ExperimentConfig& cfg);

// remark19 family diagnostics per n: mu_n(0) vs the partial product of a_i,
// second moments, coset mass on 2Z+1, and the decay behavior at t = 1/2.
nlohmann::json counterexample_explorer(const ASequence& a, int n_max);

} // namespace varconv

#endif
