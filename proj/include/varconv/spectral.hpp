#ifndef VARCONV_SPECTRAL_HPP
#define VARCONV_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "varconv/measure.hpp"

namespace varconv {

// Uniform sampling grid on the torus [-1/2, 1/2); size is a power of two so
// every node -1/2 + m/size is exact in binary floating point.
class TorusGrid {
public:
  explicit TorusGrid(std::size_t size);
  std::size_t size() const noexcept { return size_; }
  double node(std::size_t m) const noexcept {
    return -0.5 + static_cast<double>(m) / static_cast<double>(size_);
  }
  std::size_t zero_index() const noexcept { return size_ / 2; }

private:
  std::size_t size_;
};

// Values of a characteristic function (or kernel transform) on a TorusGrid.
// Convention: mu_hat(t) = sum_k mu(k) e^{-2 pi i k t}.
struct SpectralSamples {
  std::size_t grid_size = 0;
  std::vector<std::complex<double>> values;

  double max_abs() const;
};

SpectralSamples char_fun(const LatticeMeasure& mu, const TorusGrid& grid);
// Same values through a wrapped FFT; agrees with char_fun within 1e-10.
SpectralSamples char_fun_fft(const LatticeMeasure& mu, const TorusGrid& grid);

// max over the grid of |mu_hat_n - prod_i nu_hat_i|
double product_identity_residual(const MeasureFamily& fam, int n, const TorusGrid& grid);

struct DecayCertificate {
  double best_C = 0.0;   // largest C with |nu_hat(t)| <= e^{-C t^2} on the grid
  bool holds = false;    // best_C > 0
  double worst_node = 0; // node attaining the minimum of -ln|nu_hat|/t^2
  int N_0 = 0;           // family certification: bound holds for all i > N_0
};

// Grid infimum of -ln|nu_hat(t)| / t^2 over nonzero nodes; nodes where the
// transform vanishes exactly are skipped (the bound is vacuous there).
DecayCertificate gaussian_decay(const LatticeMeasure& nu, const TorusGrid& grid);

// Certifies nu_i for i = 1..n_max; N_0 is the last failing index (0 if none)
// and best_C the weakest constant among the certified tail.
DecayCertificate certify_family(const MeasureFamily& fam, int n_max, const TorusGrid& grid);

// max over nonzero nodes of |1 - mu_hat_n(t)| / (c t^2 sum_{i<=n} m_2(nu_i));
// with c = 2 pi^2 the ratio is <= 1 for centered families.
double lemma132_ratio(const MeasureFamily& fam, int n, const TorusGrid& grid, double c);

inline constexpr double kLemma132Constant = 2.0 * 3.14159265358979323846 * 3.14159265358979323846;

} // namespace varconv

#endif
