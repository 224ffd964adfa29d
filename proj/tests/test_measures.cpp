#include <cmath>
#include <map>
#include <random>

#include <doctest.h>

#include "varconv/error.hpp"
#include "varconv/io.hpp"
#include "varconv/measure.hpp"

using namespace varconv;

namespace {

using Points = std::vector<std::pair<std::int64_t, double>>;

// independent oracle: schoolbook convolution over a sparse map
std::map<std::int64_t, double> naive_convolve(const std::map<std::int64_t, double>& a,
                                              const std::map<std::int64_t, double>& b) {
  std::map<std::int64_t, double> out;
  for (const auto& [j, pa] : a)
    for (const auto& [k, pb] : b) out[j + k] += pa * pb;
  return out;
}

std::map<std::int64_t, double> as_map(const LatticeMeasure& mu) {
  std::map<std::int64_t, double> out;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mu.weights()[i] != 0.0)
      out[mu.offset() + static_cast<std::int64_t>(i)] = mu.weights()[i];
  return out;
}

void check_close(const LatticeMeasure& mu, const std::map<std::int64_t, double>& expected,
                 double tol) {
  for (const auto& [k, p] : expected) CHECK(std::abs(mu.at(k) - p) < tol);
}

LatticeMeasure random_measure(std::mt19937_64& rng, int max_width) {
  std::uniform_int_distribution<int> width(1, max_width);
  std::uniform_int_distribution<std::int64_t> off(-10, 10);
  std::uniform_real_distribution<double> mass(0.01, 1.0);
  const int w = width(rng);
  Points pts;
  double total = 0.0;
  const std::int64_t base = off(rng);
  for (int i = 0; i < w; ++i) {
    const double m = mass(rng);
    pts.emplace_back(base + i, m);
    total += m;
  }
  for (auto& [k, m] : pts) m /= total;
  return LatticeMeasure::from_points(pts);
}

} // namespace

TEST_CASE("construction: point mass and lazy walk") {
  const auto d0 = LatticeMeasure::from_points(Points{{0, 1.0}});
  CHECK(d0.offset() == 0);
  CHECK(d0.weights() == std::vector<double>{1.0});

  const auto lazy = LatticeMeasure::from_points(Points{{-1, 0.25}, {0, 0.5}, {1, 0.25}});
  CHECK(lazy.offset() == -1);
  CHECK(lazy.weights() == std::vector<double>{0.25, 0.5, 0.25});
  CHECK(lazy == LatticeMeasure::lazy_walk(0.5));
}

TEST_CASE("construction: contract violations") {
  CHECK_THROWS_WITH_AS(LatticeMeasure::from_points(Points{}), "no support points given",
                       Error);
  CHECK_THROWS_AS(LatticeMeasure::from_points(Points{{0, 0.3}, {1, 0.3}}), Error);
  CHECK_THROWS_AS(LatticeMeasure::from_points(Points{{0, 0.5}, {0, 0.5}}), Error);
  CHECK_THROWS_AS(LatticeMeasure::from_points(Points{{0, 1.5}, {1, -0.5}}), Error);
  try {
    LatticeMeasure::from_points(Points{{0, 0.3}, {1, 0.3}});
  } catch (const Error& e) {
    CHECK(e.code() == errc::mass_deviation);
  }
}

TEST_CASE("convolve: identity and binomial") {
  const auto d0 = LatticeMeasure::delta(0);
  const auto mu = LatticeMeasure::lazy_walk(0.25);
  CHECK(convolve(d0, mu) == mu);

  const auto pm1 = LatticeMeasure::from_points(Points{{-1, 0.5}, {1, 0.5}});
  const auto sq = convolve(pm1, pm1);
  CHECK(sq.at(-2) == doctest::Approx(0.25));
  CHECK(sq.at(0) == doctest::Approx(0.5));
  CHECK(sq.at(2) == doctest::Approx(0.25));
  CHECK(sq.at(1) == 0.0);
}

TEST_CASE("convolve: lazy-walk eighth power vs naive oracle") {
  const auto lazy = LatticeMeasure::lazy_walk(0.5);
  LatticeMeasure acc = lazy;
  auto oracle = as_map(lazy);
  for (int i = 1; i < 8; ++i) {
    acc = convolve(acc, lazy);
    oracle = naive_convolve(oracle, as_map(lazy));
  }
  check_close(acc, oracle, 1e-14);
}

TEST_CASE("convolve: fft path equals direct path") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_measure(rng, 40);
    const auto b = random_measure(rng, 40);
    const auto d = convolve_direct(a, b);
    const auto f = convolve_fft(a, b);
    REQUIRE(d.offset() == f.offset());
    REQUIRE(d.size() == f.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      CHECK(std::abs(d.weights()[i] - f.weights()[i]) < 1e-12);
  }
}

TEST_CASE("convolve properties: mass, commutativity, associativity, moments") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_measure(rng, 8);
    const auto b = random_measure(rng, 8);
    const auto c = random_measure(rng, 8);
    const auto ab = convolve(a, b);
    CHECK(std::abs(ab.mass() - 1.0) <= 2 * LatticeMeasure::kMassTol);
    const auto ba = convolve(b, a);
    REQUIRE(ab.size() == ba.size());
    for (std::size_t i = 0; i < ab.size(); ++i)
      CHECK(std::abs(ab.weights()[i] - ba.weights()[i]) < 1e-12);
    const auto l = convolve(ab, c);
    const auto r = convolve(a, convolve(b, c));
    REQUIRE(l.size() == r.size());
    for (std::size_t i = 0; i < l.size(); ++i)
      CHECK(std::abs(l.weights()[i] - r.weights()[i]) < 1e-12);
    CHECK(ab.expectation() ==
          doctest::Approx(a.expectation() + b.expectation()).epsilon(1e-10));
  }
}

TEST_CASE("variance additivity for centered measures") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = LatticeMeasure::lazy_walk(u(rng));
    const auto b = LatticeMeasure::lazy_walk(u(rng));
    const auto ab = convolve(a, b);
    CHECK(std::abs(ab.expectation()) < 1e-12);
    CHECK(ab.moment(2.0) == doctest::Approx(a.moment(2.0) + b.moment(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("reflect and symmetrize") {
  CHECK(LatticeMeasure::delta(2).reflect() == LatticeMeasure::delta(-2));
  const auto lazy = LatticeMeasure::lazy_walk(0.5);
  CHECK(lazy.reflect() == lazy);
  const auto skew = LatticeMeasure::from_points(Points{{0, 0.2}, {3, 0.8}});
  const auto r = skew.reflect();
  CHECK(r.at(-3) == 0.8);
  CHECK(r.at(0) == 0.2);
  CHECK(r.reflect() == skew);

  CHECK(LatticeMeasure::delta(3).symmetrize() == LatticeMeasure::delta(0));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mu = random_measure(rng, 10);
    const auto lam = mu.symmetrize();
    CHECK(std::abs(lam.expectation()) < 1e-10);
    for (std::size_t i = 0; i < lam.size(); ++i) {
      const std::int64_t k = lam.offset() + static_cast<std::int64_t>(i);
      CHECK(std::abs(lam.at(k) - lam.at(-k)) < 1e-12);
    }
    // oracle cross-check
    const auto expected = naive_convolve(as_map(mu), as_map(mu.reflect()));
    check_close(lam, expected, 1e-13);
  }
}

TEST_CASE("moments and expectation") {
  const auto d0 = LatticeMeasure::delta(0);
  CHECK(d0.moment(2.0) == 0.0);
  CHECK(d0.expectation() == 0.0);
  const auto pm1 = LatticeMeasure::from_points(Points{{-1, 0.5}, {1, 0.5}});
  CHECK(pm1.moment(2.0) == doctest::Approx(1.0));
  CHECK(pm1.expectation() == doctest::Approx(0.0));
  const auto lazy = LatticeMeasure::lazy_walk(0.3);
  CHECK(lazy.moment(2.0) == doctest::Approx(0.7));
  CHECK(lazy.moment(1.0) == doctest::Approx(0.7));
  CHECK(lazy.expectation() == doctest::Approx(0.0));
}

TEST_CASE("strict aperiodicity") {
  const auto pm1 = LatticeMeasure::from_points(Points{{-1, 0.5}, {1, 0.5}});
  CHECK_FALSE(pm1.strictly_aperiodic()); // support in 2Z + 1
  CHECK(LatticeMeasure::lazy_walk(0.5).strictly_aperiodic());
  CHECK_FALSE(LatticeMeasure::delta(5).strictly_aperiodic());
  const auto threes = LatticeMeasure::from_points(Points{{0, 0.5}, {3, 0.5}});
  CHECK_FALSE(threes.strictly_aperiodic());
}

TEST_CASE("coset concentration") {
  const auto nu = LatticeMeasure::remark19_step(0.1);
  const auto c = nu.coset_concentration(64);
  CHECK(c.value == doctest::Approx(0.9));
  CHECK(c.beta == 2);
  CHECK(c.alpha == 1);

  const auto d0 = LatticeMeasure::delta(0);
  const auto cd = d0.coset_concentration(64);
  CHECK(cd.value == doctest::Approx(1.0));
  CHECK(cd.beta == 2);
  CHECK(cd.alpha == 0);

  // exhaustive enumeration oracle for the lazy walk, beta_max = 5
  const auto lazy = LatticeMeasure::lazy_walk(0.5);
  double best = 0.0;
  for (int beta = 2; beta <= 5; ++beta) {
    for (int alpha = 0; alpha < beta; ++alpha) {
      double s = 0.0;
      for (std::int64_t k = -1; k <= 1; ++k) {
        std::int64_t r = k % beta;
        if (r < 0) r += beta;
        if (r == alpha) s += lazy.at(k);
      }
      best = std::max(best, s);
    }
  }
  const auto cl = lazy.coset_concentration(5);
  CHECK(cl.value == doctest::Approx(best));
  CHECK(best == doctest::Approx(0.5)); // mass at 0 alone; no coset collects both ends
  CHECK(cl.beta == 2);
  CHECK(cl.alpha == 0);
}

TEST_CASE("remark19 family") {
  auto fam = MeasureFamily::remark19(ASequence::constant(0.5));
  const auto nu = fam.factor(3);
  CHECK(nu.at(-1) == doctest::Approx(0.25));
  CHECK(nu.at(0) == doctest::Approx(0.5));
  CHECK(nu.at(1) == doctest::Approx(0.25));
  CHECK(std::abs(nu.expectation()) < 1e-15);
  CHECK(nu.moment(1.0) == doctest::Approx(0.5)); // m_1 = 1 - a_n

  CHECK_THROWS_AS(MeasureFamily::remark19(ASequence::constant(1.0)).factor(1), Error);
  CHECK_THROWS_AS(MeasureFamily::remark19(ASequence::constant(0.0)).factor(1), Error);

  // default regime: partial products decrease but stay above 0.5
  const ASequence def = ASequence::inv_square();
  double prod = 1.0, prev = 2.0;
  for (int n = 1; n <= 1000000; ++n) {
    prod *= def.at(n);
    CHECK(prod < prev);
    prev = prod;
  }
  CHECK(prod > 0.5);
}

TEST_CASE("prefix products and cache consistency") {
  auto fam = MeasureFamily::lazy_walk(0.5);
  CHECK(fam.prefix_product(1) == fam.factor(1));
  CHECK(fam.prefix_product(2) ==
        convolve(LatticeMeasure::lazy_walk(0.5), LatticeMeasure::lazy_walk(0.5)));

  auto r19 = MeasureFamily::remark19(ASequence::constant(0.3));
  auto oracle = as_map(r19.factor(1));
  oracle = naive_convolve(oracle, as_map(r19.factor(2)));
  oracle = naive_convolve(oracle, as_map(r19.factor(3)));
  check_close(r19.prefix_product(3), oracle, 1e-14);

  auto fixed = MeasureFamily::explicit_list({LatticeMeasure::lazy_walk(0.5)});
  CHECK_THROWS_AS(fixed.prefix_product(2), Error);
}

TEST_CASE("measure TSV round-trip") {
  const auto mu = LatticeMeasure::from_points(
      Points{{-3, 1.0 / 3.0}, {0, 0.25}, {7, 1.0 - 1.0 / 3.0 - 0.25}});
  const auto text = io::measure_to_tsv_text(mu);
  const auto back = io::measure_from_tsv_text(text);
  CHECK(back == mu);
  CHECK_THROWS_AS(io::measure_from_tsv_text("0\tnot-a-number\n"), Error);
  // comments and blank lines
  const auto with_comments = io::measure_from_tsv_text("# a measure\n0\t0.5\n\n1\t0.5\n");
  CHECK(with_comments.at(0) == 0.5);
}
