#include "varconv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "varconv/error.hpp"
#include "varconv/fft.hpp"

namespace varconv {

TorusGrid::TorusGrid(std::size_t size) : size_(size) {
  if (size < 8 || !fft::is_pow2(size))
    fail(errc::parameter_out_of_range, "grid size must be a power of two >= 8");
}

double SpectralSamples::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

SpectralSamples char_fun(const LatticeMeasure& mu, const TorusGrid& grid) {
  SpectralSamples out;
  out.grid_size = grid.size();
  out.values.resize(grid.size());
  const auto& w = mu.weights();
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double t = grid.node(m);
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) { // fixed ascending-k order
      const auto k = static_cast<double>(mu.offset() + static_cast<std::int64_t>(i));
      const double ph = -2.0 * std::numbers::pi * k * t;
      s += w[i] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    out.values[m] = s;
  }
  return out;
}

SpectralSamples char_fun_fft(const LatticeMeasure& mu, const TorusGrid& grid) {
  // mu_hat(-1/2 + m/G) = sum_k (-1)^k mu(k) e^{-2 pi i k m / G}; wrap k mod G
  const std::size_t g = grid.size();
  std::vector<fft::cdouble> a(g, fft::cdouble{});
  const auto& w = mu.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::int64_t k = mu.offset() + static_cast<std::int64_t>(i);
    std::int64_t r = k % static_cast<std::int64_t>(g);
    if (r < 0) r += static_cast<std::int64_t>(g);
    const double sign = (k & 1) ? -1.0 : 1.0;
    a[static_cast<std::size_t>(r)] += sign * w[i];
  }
  fft::transform(a, false);
  SpectralSamples out;
  out.grid_size = g;
  out.values = std::move(a);
  return out;
}

double product_identity_residual(const MeasureFamily& fam, int n, const TorusGrid& grid) {
  if (n < 1) fail(errc::parameter_out_of_range, "n must be >= 1");
  SpectralSamples lhs = char_fun(fam.prefix_product(n), grid);
  std::vector<std::complex<double>> prod(grid.size(), 1.0);
  for (int i = 1; i <= n; ++i) {
    SpectralSamples fi = char_fun(fam.factor(i), grid);
    for (std::size_t m = 0; m < grid.size(); ++m) prod[m] *= fi.values[m];
  }
  double r = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m)
    r = std::max(r, std::abs(lhs.values[m] - prod[m]));
  return r;
}

DecayCertificate gaussian_decay(const LatticeMeasure& nu, const TorusGrid& grid) {
  if (grid.size() < 64)
    fail(errc::parameter_out_of_range, "decay certification needs grid size >= 64");
  const SpectralSamples s = char_fun(nu, grid);
  DecayCertificate cert;
  cert.best_C = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < grid.size(); ++m) {
    if (m == grid.zero_index()) continue;
    const double t = grid.node(m);
    double a = std::abs(s.values[m]);
    if (a == 0.0) continue; // bound vacuous where the transform vanishes
    a = std::min(a, 1.0);   // |nu_hat| <= 1 up to round-off
    const double ratio = -std::log(a) / (t * t);
    if (ratio < cert.best_C) {
      cert.best_C = ratio;
      cert.worst_node = t;
    }
  }
  if (!std::isfinite(cert.best_C)) cert.best_C = 0.0; // all nodes vacuous
  cert.holds = cert.best_C > 0.0;
  return cert;
}

DecayCertificate certify_family(const MeasureFamily& fam, int n_max, const TorusGrid& grid) {
  DecayCertificate out;
  out.best_C = std::numeric_limits<double>::infinity();
  out.N_0 = 0;
  out.holds = false;
  for (int i = 1; i <= n_max; ++i) {
    DecayCertificate c = gaussian_decay(fam.factor(i), grid);
    if (!c.holds) {
      out.N_0 = i;
      out.best_C = std::numeric_limits<double>::infinity();
      continue;
    }
    if (c.best_C < out.best_C) {
      out.best_C = c.best_C;
      out.worst_node = c.worst_node;
    }
  }
  if (out.N_0 >= n_max || !std::isfinite(out.best_C)) {
    out.best_C = 0.0;
    out.holds = false;
  } else {
    out.holds = true;
  }
  return out;
}

double lemma132_ratio(const MeasureFamily& fam, int n, const TorusGrid& grid, double c) {
  if (n < 1) fail(errc::parameter_out_of_range, "n must be >= 1");
  if (!(c > 0.0)) fail(errc::parameter_out_of_range, "c must be positive");
  double m2_sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    const LatticeMeasure nu = fam.factor(i);
    if (std::abs(nu.expectation()) > 1e-12)
      fail(errc::non_centered_family,
           "factor " + std::to_string(i) + " has nonzero expectation");
    m2_sum += nu.moment(2.0);
  }
  const SpectralSamples s = char_fun(fam.prefix_product(n), grid);
  double worst = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    if (m == grid.zero_index()) continue;
    const double t = grid.node(m);
    const double ratio = std::abs(1.0 - s.values[m]) / (c * t * t * m2_sum);
    worst = std::max(worst, ratio);
  }
  return worst;
}

} // namespace varconv
