#include "varconv/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "varconv/error.hpp"

namespace varconv {

std::int64_t pow4(int k) {
  if (k < 0) fail(errc::parameter_out_of_range, "pow4 exponent must be >= 0");
  std::int64_t p = 1;
  for (int i = 0; i < k; ++i) p *= 4;
  return p;
}

int chi(int j, double t) {
  if (j < 0) return 0;
  const double r = t - std::floor(t + 0.5); // reduce to [-1/2, 1/2)
  const double hi = std::ldexp(1.0, -j);
  const double lo = std::ldexp(1.0, -j - 1);
  if (r >= 0.0) return (r >= lo && r < hi) ? 1 : 0;
  return (r >= -hi && r < -lo) ? 1 : 0;
}

namespace {

void check_block_range(int k, int n) {
  if (k < 1) fail(errc::range_violation, "k must be >= 1");
  if (n < pow4(k - 1) || n >= pow4(k))
    fail(errc::range_violation, "n must lie in [4^{k-1}, 4^k)");
}

} // namespace

SpectralSamples k_kernel(const MeasureFamily& fam, int k, int n, const TorusGrid& grid) {
  check_block_range(k, n);
  const SpectralSamples hi = char_fun(fam.prefix_product(n), grid);
  const SpectralSamples lo = char_fun(fam.prefix_product(static_cast<int>(pow4(k - 1))), grid);
  SpectralSamples out;
  out.grid_size = grid.size();
  out.values.resize(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m)
    out.values[m] = hi.values[m] - lo.values[m];
  return out;
}

BlockKernel k_block(const MeasureFamily& fam, int j, int k, int n, const TorusGrid& grid) {
  BlockKernel b;
  b.j = j;
  b.k = k;
  b.n = n;
  b.hat_kn = k_kernel(fam, k, n, grid);
  b.mask.resize(grid.size());
  b.hat_kjn.grid_size = grid.size();
  b.hat_kjn.values.resize(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) {
    b.mask[m] = static_cast<std::uint8_t>(chi(j + k, grid.node(m)));
    b.hat_kjn.values[m] = b.mask[m] ? b.hat_kn.values[m] : 0.0;
  }
  return b;
}

double lemma147_part1(const MeasureFamily& fam, int j, int k, const TorusGrid& grid,
                      std::uint64_t seed, bool full_sweep) {
  if (k < 1) fail(errc::range_violation, "k must be >= 1");
  const std::int64_t lo = pow4(k - 1);
  const std::int64_t hi = pow4(k) - 1;
  std::set<std::int64_t> samples{lo, (lo + hi) / 2, hi};
  if (full_sweep) {
    for (std::int64_t n = lo; n <= hi; ++n) samples.insert(n);
  } else if (hi - lo > 1) {
    std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(j + 1024) << 20) ^
                        static_cast<std::uint64_t>(k));
    std::uniform_int_distribution<std::int64_t> dist(lo + 1, hi - 1);
    for (int i = 0; i < 5; ++i) samples.insert(dist(rng));
  }
  const double scale = std::pow(4.0, std::abs(j));
  double worst = 0.0;
  for (std::int64_t n : samples) {
    BlockKernel b = k_block(fam, j, k, static_cast<int>(n), grid);
    worst = std::max(worst, b.hat_kjn.max_abs() * scale);
  }
  return worst;
}

Lemma147Part2 lemma147_part2(const MeasureFamily& fam, int j, int k, int n,
                             const TorusGrid& grid) {
  check_block_range(k, n);
  if (n + 1 >= pow4(k)) fail(errc::range_violation, "n + 1 must stay inside the block");
  Lemma147Part2 out;
  const BlockKernel a = k_block(fam, j, k, n, grid);
  const BlockKernel b = k_block(fam, j, k, n + 1, grid);
  double diff = 0.0;
  for (std::size_t m = 0; m < grid.size(); ++m)
    diff = std::max(diff, std::abs(a.hat_kjn.values[m] - b.hat_kjn.values[m]));
  const double m2 = fam.factor(n + 1).moment(2.0);
  if (m2 == 0.0) {
    out.degenerate = true;
    out.constant = 0.0;
    return out;
  }
  out.constant = diff * static_cast<double>(pow4(k)) / m2;
  return out;
}

CoarseningScheme coarsening(int j, int k) {
  if (k < 1) fail(errc::parameter_out_of_range, "k must be >= 1");
  CoarseningScheme s;
  s.j = j;
  s.k = k;
  const std::int64_t block = pow4(k - 1); // block length is 3 * 4^{k-1}
  const std::int64_t n_pts = 3 * std::min(block, pow4(std::abs(j)));
  s.N = static_cast<int>(n_pts);
  const double spacing = 3.0 * static_cast<double>(block) / static_cast<double>(n_pts);
  std::vector<std::int64_t> alphas;
  for (std::int64_t m = 0; m < n_pts; ++m) {
    auto a = block + static_cast<std::int64_t>(
                         std::llround(static_cast<double>(m) * spacing));
    a = std::min(a, pow4(k) - 1);
    if (alphas.empty() || a > alphas.back()) alphas.push_back(a);
  }
  s.alphas = std::move(alphas);
  return s;
}

} // namespace varconv
