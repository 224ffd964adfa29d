#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include <doctest.h>

#include "varconv/varconv.h"

namespace {

struct MeasureGuard {
  vc_measure* m = nullptr;
  ~MeasureGuard() { vc_measure_free(m); }
};

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { vc_string_free(s); }
};

} // namespace

TEST_CASE("measure lifecycle through the C surface") {
  const int64_t pts[] = {-1, 0, 1};
  const double ms[] = {0.25, 0.5, 0.25};
  MeasureGuard mu;
  REQUIRE(vc_measure_create(pts, ms, 3, &mu.m) == VC_OK);
  CHECK(vc_measure_offset(mu.m) == -1);
  CHECK(vc_measure_size(mu.m) == 3);
  double buf[3];
  REQUIRE(vc_measure_weights(mu.m, buf, 3) == VC_OK);
  CHECK(buf[0] == 0.25);
  CHECK(buf[1] == 0.5);
  CHECK(buf[2] == 0.25);
  double small[1];
  CHECK(vc_measure_weights(mu.m, small, 1) == VC_ERR_CONFIG);

  double e = 1.0, m2 = 0.0;
  CHECK(vc_expectation(mu.m, &e) == VC_OK);
  CHECK(e == 0.0);
  CHECK(vc_moment(mu.m, 2.0, &m2) == VC_OK);
  CHECK(m2 == 0.5);
  int aperiodic = 0;
  CHECK(vc_is_strictly_aperiodic(mu.m, &aperiodic) == VC_OK);
  CHECK(aperiodic == 1);

  MeasureGuard sq;
  REQUIRE(vc_convolve(mu.m, mu.m, &sq.m) == VC_OK);
  CHECK(vc_measure_size(sq.m) == 5);
  double w5[5];
  REQUIRE(vc_measure_weights(sq.m, w5, 5) == VC_OK);
  CHECK(w5[2] == doctest::Approx(0.375)); // central weight of the square

  MeasureGuard refl, symm;
  REQUIRE(vc_reflect(mu.m, &refl.m) == VC_OK);
  REQUIRE(vc_symmetrize(mu.m, &symm.m) == VC_OK);
  CHECK(vc_measure_size(symm.m) == 5);

  double val;
  int beta, alpha;
  REQUIRE(vc_coset_concentration(mu.m, 8, &val, &beta, &alpha) == VC_OK);
  CHECK(val == doctest::Approx(0.5));
  CHECK(beta == 2);
  CHECK(alpha == 0);
}

TEST_CASE("errors map to statuses and vc_last_error") {
  vc_measure* out = nullptr;
  const int64_t pts[] = {0, 1};
  const double bad[] = {0.5, -0.5};
  CHECK(vc_measure_create(pts, bad, 2, &out) == VC_ERR_CONFIG);
  CHECK(out == nullptr);
  CHECK(std::strlen(vc_last_error()) > 0);

  CHECK(vc_measure_create(nullptr, bad, 2, &out) == VC_ERR_CONFIG);
  CHECK(vc_measure_from_tsv("/nonexistent/measure.tsv", &out) == VC_ERR_INPUT);

  // rho below 1 is a parameter error
  const double xs[] = {0.0, 1.0};
  double v;
  CHECK(vc_variation_norm(xs, 2, 0.5, &v, nullptr, 0, nullptr) == VC_ERR_CONFIG);
}

TEST_CASE("family handles") {
  vc_family* fam = nullptr;
  REQUIRE(vc_family_from_json(R"({"family":"lazy-walk","params":{"p":0.5}})", &fam) == VC_OK);
  MeasureGuard nu, mu4;
  REQUIRE(vc_family_factor(fam, 3, &nu.m) == VC_OK);
  CHECK(vc_measure_size(nu.m) == 3);
  REQUIRE(vc_family_prefix_product(fam, 4, &mu4.m) == VC_OK);
  CHECK(vc_measure_size(mu4.m) == 9);

  double ratio = 2.0;
  CHECK(vc_lemma132_ratio(fam, 4, 512, 2.0 * 3.14159265358979323846 * 3.14159265358979323846,
                          &ratio) == VC_OK);
  CHECK(ratio <= 1.0 + 1e-9);
  vc_family_free(fam);

  CHECK(vc_family_from_json("{not json", &fam) == VC_ERR_CONFIG);
  CHECK(vc_family_from_json(R"({"family":"unknown"})", &fam) == VC_ERR_CONFIG);
}

TEST_CASE("sequence norms through the C surface") {
  const double xs[] = {0.0, 1.0, 0.0, 1.0};
  double v = 0.0;
  size_t wit[8];
  size_t wit_len = 0;
  REQUIRE(vc_variation_norm(xs, 4, 2.0, &v, wit, 8, &wit_len) == VC_OK);
  CHECK(v == doctest::Approx(std::sqrt(3.0)));
  REQUIRE(wit_len == 4);
  for (size_t i = 0; i < 4; ++i) CHECK(wit[i] == i);

  double bf = 0.0;
  REQUIRE(vc_variation_norm_bruteforce(xs, 4, 2.0, &bf) == VC_OK);
  CHECK(bf == doctest::Approx(v));

  const double ys[] = {0.0, 1.0, 0.0, 3.0};
  const int64_t bp[] = {1, 3};
  double o = 0.0;
  REQUIRE(vc_oscillation_norm(ys, 4, bp, 2, 2.0, &o) == VC_OK);
  CHECK(o == doctest::Approx(std::sqrt(10.0)));

  const double z[] = {3.0, 4.0};
  double n2 = 0.0;
  REQUIRE(vc_two_norm(z, 2, &n2) == VC_OK);
  CHECK(n2 == doctest::Approx(5.0));
}

TEST_CASE("spectral and dyadic CSV surfaces") {
  const int64_t pts[] = {-1, 0, 1};
  const double ms[] = {0.25, 0.5, 0.25};
  MeasureGuard mu;
  REQUIRE(vc_measure_create(pts, ms, 3, &mu.m) == VC_OK);

  StringGuard csv;
  REQUIRE(vc_spectrum_csv(mu.m, 64, &csv.s) == VC_OK);
  const std::string text(csv.s);
  CHECK(text.rfind("t,re,im,abs\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 65);

  double best_c = 0.0, worst = 0.0;
  int holds = 0;
  REQUIRE(vc_gaussian_decay(mu.m, 1024, &best_c, &holds, &worst) == VC_OK);
  CHECK(holds == 1);
  CHECK(best_c > 0.0);

  StringGuard table;
  REQUIRE(vc_decompose_csv(R"({"family":"lazy-walk","params":{"p":0.5}})", 2, -1, 2, 256, 0,
                           0x5eed, &table.s) == VC_OK);
  const std::string t2(table.s);
  CHECK(t2.rfind("j,k,lemma147_part1_constant\n", 0) == 0);
  CHECK(std::count(t2.begin(), t2.end(), '\n') == 5);
  CHECK(vc_decompose_csv(R"({"family":"lazy-walk","params":{"p":0.5}})", 2, 3, 1, 256, 0, 0,
                         &table.s) == VC_ERR_CONFIG);
}

TEST_CASE("verification reports are deterministic byte for byte") {
  const char* cfg = R"({"family":{"family":"lazy-walk","params":{"p":0.5}},
                        "M":256,"k_max":2,"s":3.0,"trials":2,"seed":9,"grid":256})";
  StringGuard j1, c1, j2, c2;
  REQUIRE(vc_verify_json("theorem17", cfg, 0, &j1.s, &c1.s) == VC_OK);
  REQUIRE(vc_verify_json("theorem17", cfg, 0, &j2.s, &c2.s) == VC_OK);
  CHECK(std::string(j1.s) == std::string(j2.s));
  CHECK(std::string(c1.s) == std::string(c2.s));
  CHECK(std::string(j1.s).find("\"experiment\": \"theorem17\"") != std::string::npos);
  CHECK(std::string(c1.s).rfind("experiment,channel,k_max,trial,ratio\n", 0) == 0);

  StringGuard j3;
  CHECK(vc_verify_json("theorem99", cfg, 0, &j3.s, nullptr) == VC_ERR_CONFIG);
  CHECK(vc_verify_json("theorem17", "{oops", 0, &j3.s, nullptr) == VC_ERR_CONFIG);

  // an experiment hypothesis failure surfaces as a precondition status
  const char* bad = R"({"family":{"family":"explicit",
                        "params":{"measures":[[[-1,0.5],[1,0.5]]]}},
                        "M":64,"k_max":1,"s":3.0,"trials":1,"grid":64})";
  CHECK(vc_verify_json("theorem17", bad, 0, &j3.s, nullptr) == VC_ERR_PRECONDITION);
}

TEST_CASE("counterexample exploration surface") {
  StringGuard rep;
  REQUIRE(vc_explore_counterexample_json(
              R"({"family":"remark19","params":{"a":{"kind":"inv-square"}}})", 5, &rep.s) ==
          VC_OK);
  const std::string text(rep.s);
  CHECK(text.find("\"rows\"") != std::string::npos);
  CHECK(text.find("\"partial_product\"") != std::string::npos);

  StringGuard rep2;
  CHECK(vc_explore_counterexample_json(R"({"family":"lazy-walk","params":{"p":0.5}})", 5,
                                       &rep2.s) == VC_ERR_CONFIG);
}
