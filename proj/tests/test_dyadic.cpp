#include <cmath>
#include <numbers>

#include <doctest.h>

#include "varconv/dyadic.hpp"
#include "varconv/error.hpp"

using namespace varconv;

namespace {

constexpr double kPi = std::numbers::pi;

using Points = std::vector<std::pair<std::int64_t, double>>;

} // namespace

TEST_CASE("dyadic shell indicator") {
  // E_1 = [-1/2, -1/4) u [1/4, 1/2)
  CHECK(chi(1, 0.25) == 1);
  CHECK(chi(1, 0.3) == 1);
  CHECK(chi(1, -0.5) == 1);
  CHECK(chi(1, 0.5) == 1);  // reduces to -1/2
  CHECK(chi(1, 0.24) == 0);
  CHECK(chi(1, -0.25) == 0); // belongs to E_2
  CHECK(chi(2, -0.25) == 1);
  CHECK(chi(1, 1.3) == 1);   // 1-periodic
  CHECK(chi(2, 1.0 / 8.0) == 1);  // left endpoint of E_2
  CHECK(chi(3, 1.0 / 8.0) == 0);
  CHECK(chi(3, 1.0 / 16.0) == 1);
  CHECK(chi(0, 0.7) == 0);   // E_0 misses the reduced torus entirely
  CHECK(chi(-1, 0.3) == 0);  // negative shells vanish after periodization
  CHECK(chi(5, 0.0) == 0);   // t = 0 is in no shell
}

TEST_CASE("shells partition the punctured reduced torus") {
  const TorusGrid g(1024);
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double t = g.node(m);
    int total = 0;
    for (int j = -2; j <= 30; ++j) total += chi(j, t);
    if (t == 0.0)
      CHECK(total == 0);
    else
      CHECK(total == 1);
  }
}

TEST_CASE("k_kernel closed form for the lazy walk") {
  auto fam = MeasureFamily::lazy_walk(0.5);
  const TorusGrid g(256);
  const int k = 2;
  for (int n : {4, 7, 11, 15}) {
    const auto kn = k_kernel(fam, k, n, g);
    for (std::size_t m = 0; m < g.size(); ++m) {
      const double c = std::cos(kPi * g.node(m));
      const double want = std::pow(c, 2.0 * n) - std::pow(c, 2.0 * 4);
      CHECK(std::abs(kn.values[m] - want) < 1e-12);
    }
  }
  // K_hat_n(0) = 0 always
  const auto kn = k_kernel(fam, 3, 40, g);
  CHECK(std::abs(kn.values[g.zero_index()]) < 1e-14);
  // n at the block base gives the zero kernel
  CHECK(k_kernel(fam, 2, 4, g).max_abs() == 0.0);
  // n outside [4^{k-1}, 4^k) rejected
  CHECK_THROWS_AS(k_kernel(fam, 2, 3, g), Error);
  CHECK_THROWS_AS(k_kernel(fam, 2, 16, g), Error);
}

TEST_CASE("block kernels mask and reconstruct") {
  auto fam = MeasureFamily::lazy_walk(0.5);
  const TorusGrid g(512);
  const int k = 2;
  const int n = 9;
  const auto full = k_kernel(fam, k, n, g);

  std::vector<double> covered(g.size(), 0.0);
  std::vector<int> mask_total(g.size(), 0);
  // after periodization only shells with index >= 1 survive, so j >= 1 - k
  for (int j = 1 - k; j + k <= 30; ++j) {
    const auto b = k_block(fam, j, k, n, g);
    CHECK(b.j == j);
    CHECK(b.n == n);
    for (std::size_t m = 0; m < g.size(); ++m) {
      CHECK(b.mask[m] == chi(j + k, g.node(m)));
      if (b.mask[m]) {
        CHECK(b.hat_kjn.values[m] == full.values[m]);
      } else {
        CHECK(b.hat_kjn.values[m] == 0.0);
      }
      covered[m] += b.hat_kjn.values[m].real();
      mask_total[m] += b.mask[m];
    }
  }
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (g.node(m) == 0.0) {
      CHECK(mask_total[m] == 0);
      CHECK(std::abs(full.values[m]) < 1e-14); // nothing to reconstruct at t = 0
    } else {
      CHECK(mask_total[m] == 1); // shells are disjoint and cover
      CHECK(std::abs(covered[m] - full.values[m].real()) < 1e-12);
    }
  }
}

TEST_CASE("block bound constant decays like 4^{-|j|}") {
  auto fam = MeasureFamily::lazy_walk(0.5);
  const TorusGrid g(2048);
  const int k = 3;
  const double c0 = lemma147_part1(fam, 0, k, g);
  CHECK(c0 > 0.0);
  CHECK(c0 < 10.0);
  // same seed, same answer
  CHECK(lemma147_part1(fam, 0, k, g) == c0);
  // the normalized constant stays bounded as |j| grows on both sides
  for (int j : {-3, -1, 1, 2, 4}) {
    const double c = lemma147_part1(fam, j, k, g);
    CHECK(c >= 0.0);
    CHECK(c < 10.0);
  }
  // full sweep dominates the sampled estimate
  const double sampled = lemma147_part1(fam, 1, 2, g);
  const double swept = lemma147_part1(fam, 1, 2, g, 0x5eed, true);
  CHECK(swept >= sampled - 1e-15);
}

TEST_CASE("successive block difference identity") {
  auto fam = MeasureFamily::lazy_walk(0.5);
  const TorusGrid g(1024);
  const int k = 2;
  const int n = 6;
  const int j = 1;
  // K_hat_{j,n} - K_hat_{j,n+1} = mu_hat_n (1 - nu_hat_{n+1}) chi_{j+k}
  const auto bn = k_block(fam, j, k, n, g);
  const auto bn1 = k_block(fam, j, k, n + 1, g);
  const auto mu_n = char_fun(fam.prefix_product(n), g);
  const auto nu = char_fun(fam.factor(n + 1), g);
  for (std::size_t m = 0; m < g.size(); ++m) {
    const auto lhs = bn.hat_kjn.values[m] - bn1.hat_kjn.values[m];
    const auto rhs = static_cast<double>(chi(j + k, g.node(m))) * mu_n.values[m] *
                     (1.0 - nu.values[m]);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }

  const auto p2 = lemma147_part2(fam, j, k, n, g);
  CHECK_FALSE(p2.degenerate);
  CHECK(p2.constant > 0.0);
  CHECK(p2.constant < 100.0);

  // a point-mass factor makes the difference vanish identically
  std::vector<LatticeMeasure> ms;
  for (int i = 0; i < 4; ++i) ms.push_back(LatticeMeasure::lazy_walk(0.5));
  ms.push_back(LatticeMeasure::delta(0));
  ms.push_back(LatticeMeasure::lazy_walk(0.5));
  auto fam2 = MeasureFamily::explicit_list(ms);
  const auto deg = lemma147_part2(fam2, 0, 2, 4, g);
  CHECK(deg.degenerate);
  CHECK(deg.constant == 0.0);
}

TEST_CASE("coarsening schemes") {
  const auto a = coarsening(0, 1);
  CHECK(a.N == 3);
  CHECK(a.alphas == std::vector<std::int64_t>{1, 2, 3});

  const auto b = coarsening(1, 3);
  CHECK(b.N == 12);
  REQUIRE(b.alphas.size() == 12);
  CHECK(b.alphas.front() == 16);
  CHECK(b.alphas.back() < 64);
  for (std::size_t i = 1; i < b.alphas.size(); ++i)
    CHECK(b.alphas[i] - b.alphas[i - 1] == 4);

  // k <= |j|: spacing saturates at 1 and the scheme lists every n in the block
  const auto c = coarsening(-5, 2);
  CHECK(c.N == 12);
  REQUIRE(c.alphas.size() == 12);
  for (std::size_t i = 0; i < c.alphas.size(); ++i)
    CHECK(c.alphas[i] == 4 + static_cast<std::int64_t>(i));

  const auto d = coarsening(3, 1);
  CHECK(d.N == 3);
  CHECK(d.alphas == std::vector<std::int64_t>{1, 2, 3});

  CHECK_THROWS_AS(coarsening(0, 0), Error);
}
