#include <doctest.h>

#include "gds/error.hpp"
#include "gds/verify.hpp"

using namespace gds;

TEST_CASE("samplers produce the requested subgroups") {
  Rng rng(41);
  for (i64 N : {9, 12, 25}) {
    for (int t = 0; t < 100; ++t) {
      CHECK(in_gamma0(random_gamma0(rng, N, 5), N));
      CHECK(in_gamma1(random_gamma1(rng, N, 5), N));
      Cusp x = random_infinity_cusp(rng, N, 5);
      CHECK(x.q % N == 0);
    }
  }
}

TEST_CASE("suites are deterministic for a fixed seed") {
  VerifyOptions o;
  o.seed = 5;
  auto a = run_suite("fricke-k2", o), b = run_suite("fricke-k2", o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].pass == b[i].pass);
    CHECK(a[i].detail == b[i].detail);
  }
  CHECK_THROWS_AS(run_suite("nonsense"), Error);
}

TEST_CASE("context lists") {
  auto q = quadratic_contexts(32, 9);
  for (const auto& c : q) {
    CHECK(c.quadratic());
    CHECK(c.N() <= 32);
  }
  CHECK(all_contexts(25, 6).size() > quadratic_contexts(25, 6).size());
}

TEST_CASE("three-term relation and Fricke twisted h over random samples") {
  CHECK(check_three_term({}, 6).pass);
}
