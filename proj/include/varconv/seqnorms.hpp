#ifndef VARCONV_SEQNORMS_HPP
#define VARCONV_SEQNORMS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace varconv {

struct NormResult {
  double value = 0.0;
  // variation: the maximizing subsequence (0-based indices, strictly increasing);
  // oscillation: per-block argmax indices
  std::vector<std::size_t> witness;
};

// Strictly increasing breakpoints in 1-based index space; first >= 1.
// The default blocks are breakpoints 1, 4, 16, ..., capped at n.
std::vector<std::int64_t> pow4_breakpoints(std::size_t n);

// v(rho) by the O(N^2) dynamic program; rho in [1, 64].
NormResult variation_norm(std::span<const double> xs, double rho);

// Exact enumeration over all 2^N subsequences; test oracle, N <= 18.
NormResult variation_norm_bruteforce(std::span<const double> xs, double rho);

// One v(rho) result per half-open block [n_k, n_{k+1}); xs is 1-based
// (xs[0] = x_1) and every n_{k+1} must satisfy n_{k+1} <= N + 1.
std::vector<NormResult> block_variation(std::span<const double> xs,
                                        std::span<const std::int64_t> breakpoints, double rho);

// o(s) with CLOSED block maxima over n_k <= n <= n_{k+1}; the last block is
// clamped to the end of the sequence, and a final block [n_K, N] is added
// when the last breakpoint falls short of N.
NormResult oscillation_norm(std::span<const double> xs,
                            std::span<const std::int64_t> breakpoints, double s);

// v(rho) of each prefix xs[0..L) for the given lengths (ascending, >= 1),
// from a single DP pass; entry i equals variation_norm(xs.first(lengths[i])).
std::vector<double> prefix_variation_values(std::span<const double> xs, double rho,
                                            std::span<const std::size_t> lengths);

double two_norm(std::span<const double> xs);

} // namespace varconv

#endif
