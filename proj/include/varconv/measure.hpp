#ifndef VARCONV_MEASURE_HPP
#define VARCONV_MEASURE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace varconv {

struct CosetConcentration {
  double value = 0.0; // max mass of beta*Z + alpha
  int beta = 2;
  int alpha = 0;
};

// Finitely supported probability measure on Z, stored densely over its
// support interval [offset, offset + size).
class LatticeMeasure {
public:
  static constexpr double kMassTol = 1e-9;
  static constexpr double kTrimTol = 1e-15;

  // points: (support point, mass) pairs in arbitrary order.
  static LatticeMeasure from_points(std::span<const std::pair<std::int64_t, double>> points);
  static LatticeMeasure delta(std::int64_t k);
  // mass p at 0, (1-p)/2 at each of -1 and +1
  static LatticeMeasure lazy_walk(double p);
  // remark19 step measure: mass a at 0, (1-a)/2 at each of -1 and +1.
  static LatticeMeasure remark19_step(double a);

  std::int64_t offset() const noexcept { return offset_; }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  // mass at lattice point k (0 off support)
  double at(std::int64_t k) const noexcept;
  double mass() const noexcept;

  double moment(double p) const;
  double expectation() const;
  bool strictly_aperiodic() const;
  // mass on the coset beta*Z + alpha
  double coset_mass(int beta, int alpha) const;
  CosetConcentration coset_concentration(int beta_max = 64) const;

  LatticeMeasure reflect() const;
  LatticeMeasure symmetrize() const; // mu * reflect(mu)

  bool operator==(const LatticeMeasure&) const = default;

private:
  LatticeMeasure(std::int64_t offset, std::vector<double> weights)
      : offset_(offset), weights_(std::move(weights)) {}
  // trim tiny edge weights, clamp FFT round-off negatives, renormalize
  static LatticeMeasure from_raw_product(std::int64_t offset, std::vector<double> weights);

  friend LatticeMeasure convolve(const LatticeMeasure&, const LatticeMeasure&);
  friend LatticeMeasure convolve_direct(const LatticeMeasure&, const LatticeMeasure&);
  friend LatticeMeasure convolve_fft(const LatticeMeasure&, const LatticeMeasure&);

  std::int64_t offset_ = 0;
  std::vector<double> weights_;
};

// Adaptive: direct below the size crossover, FFT above.
LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b);
LatticeMeasure convolve_direct(const LatticeMeasure& a, const LatticeMeasure& b);
LatticeMeasure convolve_fft(const LatticeMeasure& a, const LatticeMeasure& b);

// Parameter sequence a_n for the remark19 family.
struct ASequence {
  enum class Kind { constant, inv_square, list };
  Kind kind = Kind::inv_square;
  double value = 0.5;          // constant
  std::vector<double> values;  // list

  double at(int n) const; // 1-based
  std::optional<int> length() const;
  static ASequence constant(double a) { return {Kind::constant, a, {}}; }
  static ASequence inv_square() { return {Kind::inv_square, 0.0, {}}; }
  static ASequence list(std::vector<double> v) { return {Kind::list, 0.0, std::move(v)}; }
};

// Sequence (nu_1, nu_2, ...) with a thread-safe cache of the prefix
// convolutions mu_n = nu_1 * ... * nu_n.
class MeasureFamily {
public:
  using Generator = std::function<LatticeMeasure(int)>; // 1-based index

  MeasureFamily(std::string name, Generator gen, std::optional<int> length = std::nullopt);

  static MeasureFamily lazy_walk(double p);
  static MeasureFamily remark19(ASequence a);
  static MeasureFamily explicit_list(std::vector<LatticeMeasure> measures);

  const std::string& name() const noexcept { return name_; }
  std::optional<int> length() const noexcept { return length_; }

  LatticeMeasure factor(int i) const;         // nu_i
  LatticeMeasure prefix_product(int n) const; // mu_n, cached

  // remark19 diagnostics; nullopt for other families
  std::optional<double> a_value(int n) const;
  std::optional<double> a_partial_product(int n) const;

private:
  struct State {
    std::mutex mutex;
    std::map<int, LatticeMeasure> prefix;
    std::map<int, LatticeMeasure> factors;
  };

  std::string name_;
  Generator gen_;
  std::optional<int> length_;
  std::optional<ASequence> a_;
  std::shared_ptr<State> state_;
};

} // namespace varconv

#endif
