#include "varconv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "varconv/error.hpp"
#include "varconv/fft.hpp"

namespace varconv {

namespace {

constexpr std::size_t kFftCrossover = 1u << 16; // on L_a * L_b

void validate(std::int64_t /*offset*/, const std::vector<double>& w) {
  if (w.empty()) fail(errc::empty_support, "measure has empty support");
  for (double x : w)
    if (x < 0.0) fail(errc::negative_mass, "negative mass in measure");
  if (w.front() <= 0.0 || w.back() <= 0.0)
    fail(errc::empty_support, "measure not in trimmed form");
  const double m = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(m - 1.0) > LatticeMeasure::kMassTol)
    fail(errc::mass_deviation, "total mass deviates from 1 by more than tolerance");
}

} // namespace

LatticeMeasure LatticeMeasure::from_points(
    std::span<const std::pair<std::int64_t, double>> points) {
  if (points.empty()) fail(errc::empty_support, "no support points given");
  std::vector<std::pair<std::int64_t, double>> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].first == pts[i - 1].first)
      fail(errc::duplicate_point, "duplicate support point " + std::to_string(pts[i].first));
  for (const auto& [k, m] : pts)
    if (m < 0.0) fail(errc::negative_mass, "negative mass at " + std::to_string(k));
  // trim zero-mass edges
  std::size_t lo = 0, hi = pts.size();
  while (lo < hi && pts[lo].second == 0.0) ++lo;
  while (hi > lo && pts[hi - 1].second == 0.0) --hi;
  if (lo == hi) fail(errc::empty_support, "all masses are zero");
  const std::int64_t offset = pts[lo].first;
  std::vector<double> w(static_cast<std::size_t>(pts[hi - 1].first - offset) + 1, 0.0);
  for (std::size_t i = lo; i < hi; ++i)
    w[static_cast<std::size_t>(pts[i].first - offset)] = pts[i].second;
  validate(offset, w);
  return LatticeMeasure(offset, std::move(w));
}

LatticeMeasure LatticeMeasure::delta(std::int64_t k) { return LatticeMeasure(k, {1.0}); }

LatticeMeasure LatticeMeasure::lazy_walk(double p) {
  if (!(p >= 0.0 && p < 1.0))
    fail(errc::parameter_out_of_range, "lazy-walk p must be in [0, 1)");
  return LatticeMeasure(-1, {(1.0 - p) / 2.0, p, (1.0 - p) / 2.0});
}

LatticeMeasure LatticeMeasure::remark19_step(double a) {
  if (!(a > 0.0 && a < 1.0))
    fail(errc::parameter_out_of_range, "remark19 a_n must be in (0, 1)");
  return LatticeMeasure(-1, {(1.0 - a) / 2.0, a, (1.0 - a) / 2.0});
}

double LatticeMeasure::at(std::int64_t k) const noexcept {
  if (k < offset_ || k >= offset_ + static_cast<std::int64_t>(weights_.size())) return 0.0;
  return weights_[static_cast<std::size_t>(k - offset_)];
}

double LatticeMeasure::mass() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double LatticeMeasure::moment(double p) const {
  if (!(p > 0.0)) fail(errc::parameter_out_of_range, "moment order must be positive");
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const auto k = static_cast<double>(offset_ + static_cast<std::int64_t>(i));
    s += std::pow(std::abs(k), p) * weights_[i];
  }
  return s;
}

double LatticeMeasure::expectation() const {
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    s += static_cast<double>(offset_ + static_cast<std::int64_t>(i)) * weights_[i];
  return s;
}

bool LatticeMeasure::strictly_aperiodic() const {
  // support differences must generate Z, i.e. gcd of differences is 1
  std::int64_t g = 0;
  std::optional<std::int64_t> first;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] <= 0.0) continue;
    const std::int64_t k = offset_ + static_cast<std::int64_t>(i);
    if (!first) {
      first = k;
    } else {
      g = std::gcd(g, k - *first);
    }
  }
  return g == 1;
}

double LatticeMeasure::coset_mass(int beta, int alpha) const {
  if (beta < 1) fail(errc::parameter_out_of_range, "beta must be >= 1");
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const std::int64_t k = offset_ + static_cast<std::int64_t>(i);
    std::int64_t r = k % beta;
    if (r < 0) r += beta;
    if (r == alpha) s += weights_[i];
  }
  return s;
}

CosetConcentration LatticeMeasure::coset_concentration(int beta_max) const {
  if (beta_max < 2) fail(errc::parameter_out_of_range, "beta_max must be >= 2");
  CosetConcentration best;
  best.value = -1.0;
  for (int beta = 2; beta <= beta_max; ++beta) {
    std::vector<double> per_alpha(static_cast<std::size_t>(beta), 0.0);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const std::int64_t k = offset_ + static_cast<std::int64_t>(i);
      std::int64_t r = k % beta;
      if (r < 0) r += beta;
      per_alpha[static_cast<std::size_t>(r)] += weights_[i];
    }
    for (int alpha = 0; alpha < beta; ++alpha) {
      if (per_alpha[static_cast<std::size_t>(alpha)] > best.value) {
        best = {per_alpha[static_cast<std::size_t>(alpha)], beta, alpha};
      }
    }
  }
  return best;
}

LatticeMeasure LatticeMeasure::reflect() const {
  std::vector<double> w(weights_.rbegin(), weights_.rend());
  const std::int64_t off = -(offset_ + static_cast<std::int64_t>(weights_.size()) - 1);
  return LatticeMeasure(off, std::move(w));
}

LatticeMeasure LatticeMeasure::symmetrize() const { return convolve(*this, reflect()); }

LatticeMeasure LatticeMeasure::from_raw_product(std::int64_t offset, std::vector<double> w) {
  for (double& x : w) {
    if (x < 0.0) {
      if (x < -1e-12) fail(errc::negative_mass, "convolution produced a negative weight");
      x = 0.0; // FFT round-off
    }
  }
  std::size_t lo = 0, hi = w.size();
  while (lo < hi && w[lo] < kTrimTol) ++lo;
  while (hi > lo && w[hi - 1] < kTrimTol) --hi;
  if (lo == hi) fail(errc::empty_support, "convolution trimmed to nothing");
  std::vector<double> trimmed(w.begin() + static_cast<std::ptrdiff_t>(lo),
                              w.begin() + static_cast<std::ptrdiff_t>(hi));
  const double m = std::accumulate(trimmed.begin(), trimmed.end(), 0.0);
  if (std::abs(m - 1.0) > 2.0 * kMassTol)
    fail(errc::mass_deviation, "convolution lost mass beyond tolerance");
  for (double& x : trimmed) x /= m;
  return LatticeMeasure(offset + static_cast<std::int64_t>(lo), std::move(trimmed));
}

LatticeMeasure convolve_direct(const LatticeMeasure& a, const LatticeMeasure& b) {
  const auto& wa = a.weights_;
  const auto& wb = b.weights_;
  std::vector<double> out(wa.size() + wb.size() - 1, 0.0);
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (wa[i] == 0.0) continue;
    for (std::size_t j = 0; j < wb.size(); ++j) out[i + j] += wa[i] * wb[j];
  }
  return LatticeMeasure::from_raw_product(a.offset_ + b.offset_, std::move(out));
}

LatticeMeasure convolve_fft(const LatticeMeasure& a, const LatticeMeasure& b) {
  auto out = fft::convolve_real(a.weights_, b.weights_);
  return LatticeMeasure::from_raw_product(a.offset_ + b.offset_, std::move(out));
}

LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b) {
  if (a.weights_.size() * b.weights_.size() <= kFftCrossover) return convolve_direct(a, b);
  return convolve_fft(a, b);
}

double ASequence::at(int n) const {
  if (n < 1) fail(errc::parameter_out_of_range, "sequence index must be >= 1");
  double a;
  switch (kind) {
    case Kind::constant:
      a = value;
      break;
    case Kind::inv_square: {
      const double m = static_cast<double>(n) + 1.0;
      a = 1.0 - 1.0 / (m * m);
      break;
    }
    case Kind::list:
      if (static_cast<std::size_t>(n) > values.size())
        fail(errc::family_exhausted, "a-sequence shorter than requested index");
      a = values[static_cast<std::size_t>(n - 1)];
      break;
    default:
      fail(errc::parameter_out_of_range, "bad sequence kind");
  }
  if (!(a > 0.0 && a < 1.0))
    fail(errc::parameter_out_of_range, "a_n must lie in (0, 1)");
  return a;
}

std::optional<int> ASequence::length() const {
  if (kind == Kind::list) return static_cast<int>(values.size());
  return std::nullopt;
}

MeasureFamily::MeasureFamily(std::string name, Generator gen, std::optional<int> length)
    : name_(std::move(name)),
      gen_(std::move(gen)),
      length_(length),
      state_(std::make_shared<State>()) {}

MeasureFamily MeasureFamily::lazy_walk(double p) {
  LatticeMeasure nu = LatticeMeasure::lazy_walk(p);
  return MeasureFamily("lazy-walk", [nu](int) { return nu; });
}

MeasureFamily MeasureFamily::remark19(ASequence a) {
  MeasureFamily fam("remark19",
                    [a](int n) { return LatticeMeasure::remark19_step(a.at(n)); },
                    a.length());
  fam.a_ = std::move(a);
  return fam;
}

MeasureFamily MeasureFamily::explicit_list(std::vector<LatticeMeasure> measures) {
  if (measures.empty()) fail(errc::empty_support, "explicit family needs at least one measure");
  const int len = static_cast<int>(measures.size());
  auto shared = std::make_shared<std::vector<LatticeMeasure>>(std::move(measures));
  return MeasureFamily(
      "explicit",
      [shared](int n) { return (*shared)[static_cast<std::size_t>(n - 1)]; }, len);
}

LatticeMeasure MeasureFamily::factor(int i) const {
  if (i < 1) fail(errc::parameter_out_of_range, "family index must be >= 1");
  if (length_ && i > *length_) fail(errc::family_exhausted, "family has no factor " + std::to_string(i));
  std::lock_guard lock(state_->mutex);
  auto it = state_->factors.find(i);
  if (it == state_->factors.end()) it = state_->factors.emplace(i, gen_(i)).first;
  return it->second;
}

LatticeMeasure MeasureFamily::prefix_product(int n) const {
  if (n < 1) fail(errc::parameter_out_of_range, "prefix length must be >= 1");
  if (length_ && n > *length_) fail(errc::family_exhausted, "family exhausted at " + std::to_string(n));
  std::lock_guard lock(state_->mutex);
  auto it = state_->prefix.find(n);
  if (it != state_->prefix.end()) return it->second;
  // extend from the largest cached prefix below n
  auto lb = state_->prefix.lower_bound(n);
  int m = 0;
  std::optional<LatticeMeasure> acc;
  if (lb != state_->prefix.begin()) {
    --lb;
    m = lb->first;
    acc = lb->second;
  }
  while (m < n) {
    ++m;
    auto fit = state_->factors.find(m);
    if (fit == state_->factors.end()) fit = state_->factors.emplace(m, gen_(m)).first;
    acc = acc ? convolve(*acc, fit->second) : fit->second;
    state_->prefix.emplace(m, *acc);
  }
  return *acc;
}

std::optional<double> MeasureFamily::a_value(int n) const {
  if (!a_) return std::nullopt;
  return a_->at(n);
}

std::optional<double> MeasureFamily::a_partial_product(int n) const {
  if (!a_) return std::nullopt;
  double p = 1.0;
  for (int i = 1; i <= n; ++i) p *= a_->at(i);
  return p;
}

} // namespace varconv
