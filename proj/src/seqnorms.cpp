#include "varconv/seqnorms.hpp"

#include <algorithm>
#include <cmath>

#include "varconv/error.hpp"

namespace varconv {

namespace {

void check_rho(double rho) {
  if (!(rho >= 1.0) || rho > 64.0)
    fail(errc::rho_out_of_range, "rho must lie in [1, 64]");
}

// Validates breakpoints and returns them; n is the 1-based sequence length.
void check_breakpoints(std::span<const std::int64_t> bp, std::size_t n) {
  if (bp.empty()) fail(errc::block_out_of_range, "no breakpoints given");
  if (bp.front() < 1) fail(errc::block_out_of_range, "first breakpoint must be >= 1");
  for (std::size_t i = 1; i < bp.size(); ++i)
    if (bp[i] <= bp[i - 1])
      fail(errc::block_out_of_range, "breakpoints must be strictly increasing");
  if (static_cast<std::size_t>(bp.front()) > n)
    fail(errc::block_out_of_range, "first breakpoint past end of sequence");
}

} // namespace

std::vector<std::int64_t> pow4_breakpoints(std::size_t n) {
  std::vector<std::int64_t> bp;
  for (std::int64_t b = 1; static_cast<std::size_t>(b) <= n; b *= 4) bp.push_back(b);
  return bp;
}

NormResult variation_norm(std::span<const double> xs, double rho) {
  if (xs.empty()) fail(errc::empty_sequence, "variation norm of empty sequence");
  check_rho(rho);
  const std::size_t n = xs.size();
  // best[i]: max sum of |diff|^rho over strictly increasing subsequences
  // ending at i (repeated indices add zero, so non-strict chains gain nothing)
  std::vector<double> best(n, 0.0);
  std::vector<std::ptrdiff_t> prev(n, -1);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double cand = best[j] + std::pow(std::abs(xs[i] - xs[j]), rho);
      if (cand > best[i]) { // strict: ties break toward the smallest j
        best[i] = cand;
        prev[i] = static_cast<std::ptrdiff_t>(j);
      }
    }
  }
  std::size_t arg = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (best[i] > best[arg]) arg = i;
  NormResult r;
  r.value = std::pow(best[arg], 1.0 / rho);
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(arg); i >= 0; i = prev[i])
    r.witness.push_back(static_cast<std::size_t>(i));
  std::reverse(r.witness.begin(), r.witness.end());
  return r;
}

NormResult variation_norm_bruteforce(std::span<const double> xs, double rho) {
  if (xs.empty()) fail(errc::empty_sequence, "variation norm of empty sequence");
  check_rho(rho);
  const std::size_t n = xs.size();
  if (n > 18) fail(errc::too_long, "brute-force enumeration capped at N = 18");
  double best = 0.0;
  std::uint32_t best_mask = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double sum = 0.0;
    double last = 0.0;
    bool have_last = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      if (have_last) sum += std::pow(std::abs(xs[i] - last), rho);
      last = xs[i];
      have_last = true;
    }
    if (sum > best) {
      best = sum;
      best_mask = mask;
    }
  }
  NormResult r;
  r.value = std::pow(best, 1.0 / rho);
  for (std::size_t i = 0; i < n; ++i)
    if (best_mask & (1u << i)) r.witness.push_back(i);
  return r;
}

std::vector<NormResult> block_variation(std::span<const double> xs,
                                        std::span<const std::int64_t> breakpoints, double rho) {
  if (xs.empty()) fail(errc::empty_sequence, "block variation of empty sequence");
  check_rho(rho);
  check_breakpoints(breakpoints, xs.size());
  if (breakpoints.size() < 2)
    fail(errc::block_out_of_range, "block variation needs at least two breakpoints");
  if (static_cast<std::size_t>(breakpoints.back()) > xs.size() + 1)
    fail(errc::block_out_of_range, "breakpoint past end of sequence");
  std::vector<NormResult> out;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const auto lo = static_cast<std::size_t>(breakpoints[k] - 1);      // inclusive
    const auto hi = static_cast<std::size_t>(breakpoints[k + 1] - 1);  // exclusive
    NormResult r = variation_norm(xs.subspan(lo, hi - lo), rho);
    for (auto& w : r.witness) w += lo;
    out.push_back(std::move(r));
  }
  return out;
}

NormResult oscillation_norm(std::span<const double> xs,
                            std::span<const std::int64_t> breakpoints, double s) {
  if (xs.empty()) fail(errc::empty_sequence, "oscillation norm of empty sequence");
  check_rho(s);
  check_breakpoints(breakpoints, xs.size());
  const auto n = static_cast<std::int64_t>(xs.size());
  std::vector<std::pair<std::int64_t, std::int64_t>> blocks; // closed [lo, hi], 1-based
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    if (breakpoints[k] > n) break;
    blocks.emplace_back(breakpoints[k], std::min(breakpoints[k + 1], n));
  }
  if (breakpoints.back() < n) blocks.emplace_back(breakpoints.back(), n);
  if (blocks.empty()) blocks.emplace_back(breakpoints.front(), std::min(breakpoints.front(), n));

  NormResult r;
  double sum = 0.0;
  for (const auto& [lo, hi] : blocks) {
    const double base = xs[static_cast<std::size_t>(lo - 1)];
    double m = 0.0;
    std::size_t arg = static_cast<std::size_t>(lo - 1);
    for (std::int64_t i = lo; i <= hi; ++i) {
      const double d = std::abs(xs[static_cast<std::size_t>(i - 1)] - base);
      if (d > m) {
        m = d;
        arg = static_cast<std::size_t>(i - 1);
      }
    }
    sum += std::pow(m, s);
    r.witness.push_back(arg);
  }
  r.value = std::pow(sum, 1.0 / s);
  return r;
}

std::vector<double> prefix_variation_values(std::span<const double> xs, double rho,
                                            std::span<const std::size_t> lengths) {
  if (xs.empty()) fail(errc::empty_sequence, "variation norm of empty sequence");
  check_rho(rho);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 1 || lengths[i] > xs.size())
      fail(errc::block_out_of_range, "prefix length out of range");
    if (i > 0 && lengths[i] <= lengths[i - 1])
      fail(errc::block_out_of_range, "prefix lengths must be strictly increasing");
  }
  const std::size_t n = xs.size();
  std::vector<double> best(n, 0.0);
  std::vector<double> out;
  out.reserve(lengths.size());
  double running_max = 0.0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < n && next < lengths.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      best[i] = std::max(best[i], best[j] + std::pow(std::abs(xs[i] - xs[j]), rho));
    running_max = std::max(running_max, best[i]);
    while (next < lengths.size() && lengths[next] == i + 1) {
      out.push_back(std::pow(running_max, 1.0 / rho));
      ++next;
    }
  }
  return out;
}

double two_norm(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x * x;
  return std::sqrt(s);
}

} // namespace varconv
