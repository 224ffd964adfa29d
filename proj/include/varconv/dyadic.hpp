#ifndef VARCONV_DYADIC_HPP
#define VARCONV_DYADIC_HPP

#include <cstdint>
#include <vector>

#include "varconv/measure.hpp"
#include "varconv/spectral.hpp"

namespace varconv {

std::int64_t pow4(int k);

// Indicator of the one-periodized dyadic shell
// E_j = [-2^{-j}, -2^{-j-1}) u [2^{-j-1}, 2^{-j}); 0 for every t when j < 0.
int chi(int j, double t);

// K_hat_n = mu_hat_n - mu_hat_{4^{k-1}} on the grid; requires 4^{k-1} <= n < 4^k.
SpectralSamples k_kernel(const MeasureFamily& fam, int k, int n, const TorusGrid& grid);

struct BlockKernel {
  int j = 0;
  int k = 1;
  int n = 1;
  SpectralSamples hat_kn;         // K_hat_n
  SpectralSamples hat_kjn;        // K_hat_n masked to the shell E_{j+k}
  std::vector<std::uint8_t> mask; // chi(j + k, t_m) per node
};

BlockKernel k_block(const MeasureFamily& fam, int j, int k, int n, const TorusGrid& grid);

// Empirical constant sup_n sup_t |K_hat_{j,n}(t)| * 4^{|j|}. n ranges over the
// block endpoints, the midpoint, and 5 seeded interior samples (or the full
// block with full_sweep).
double lemma147_part1(const MeasureFamily& fam, int j, int k, const TorusGrid& grid,
                      std::uint64_t seed = 0x5eed, bool full_sweep = false);

struct Lemma147Part2 {
  double constant = 0.0; // sup_t |K_hat_{j,n} - K_hat_{j,n+1}| * 4^k / m_2(nu_{n+1})
  bool degenerate = false; // m_2(nu_{n+1}) = 0; difference is identically zero
};

Lemma147Part2 lemma147_part2(const MeasureFamily& fam, int j, int k, int n,
                             const TorusGrid& grid);

struct CoarseningScheme {
  int j = 0;
  int k = 1;
  int N = 0;                       // 3 * min{4^{k-1}, 4^{|j|}}
  std::vector<std::int64_t> alphas; // alpha_1 = 4^{k-1} < ... < alpha_N < 4^k
};

CoarseningScheme coarsening(int j, int k);

} // namespace varconv

#endif
