#include <doctest.h>

#include <random>

#include "gds/bernoulli.hpp"
#include "gds/error.hpp"
#include "gds/fricke.hpp"
#include "gds/verify.hpp"

using namespace gds;

namespace {
Rational q(long p, long d) { return Rational(Integer(p), Integer(d)); }
SumContext ctx_of(const char* a, const char* b, int k) { return SumContext(parse_character(a), parse_character(b), k); }
}  // namespace

TEST_CASE("Fricke involution on cusps") {
  CHECK(fricke_apply(12, Cusp::infinity()) == Cusp(0, 1));
  CHECK(fricke_apply(12, Cusp(0, 1)).is_infinity());
  for (i64 p = -20; p <= 20; ++p)
    for (i64 qq = 1; qq <= 30; ++qq) {
      if (std::gcd(p, qq) != 1) continue;
      Cusp x(p, qq);
      CHECK(fricke_apply(21, fricke_apply(21, x)) == x);
      if (qq % 21 == 0) CHECK(std::gcd(fricke_apply(21, x).q, i64(21)) == 1);
    }
}

TEST_CASE("S-hat at zero") {
  CHECK(shat_at_zero(ctx_of("chi3", "chi5", 3)).is_zero());
  CHECK(shat_at_zero(ctx_of("chi4", "chi8a", 3)).is_zero());
  Cyclotomic v = shat_at_zero(ctx_of("chi3", "chi3", 2));
  CHECK(v.is_rational());
  CHECK(abs(v.rational_value()) == q(1, 9));
  // B_{1,chi3}(0) = -1/3 and B_{1,chi7}(0) = (1/7) sum chi7(n) n = -1
  CHECK(shat_at_zero(ctx_of("chi3", "chi7", 2)) == Cyclotomic(q(1, 3)));
  CHECK(shat_at_zero(ctx_of("chi3", "chi4", 2)) == Cyclotomic(q(1, 6)));
}

TEST_CASE("weight 2 reciprocity is exact") {
  std::mt19937_64 rng(31);
  for (const char* pair : {"chi3,chi7", "chi3,chi4", "chi4,chi3", "5:1,5:3", "5:1,chi4"}) {
    SumContext ctx = parse_context(pair, 2);
    int twisted = 0;
    for (int t = 0; t < 30; ++t) {
      Mat2 g = random_gamma0(rng, ctx.N(), 5);
      twisted += !(ctx.psi(g) == Cyclotomic(Rational(1)));
      auto r = verify_reciprocity_k2(ctx, g);
      CHECK(r.residual.is_zero());
      CHECK(r.pass);
    }
    CHECK(twisted > 0);
  }
  CHECK_THROWS_AS(verify_reciprocity_k2(ctx_of("chi5", "chi5", 4), Mat2(1, 0, 25, 1)), Error);
  CHECK_THROWS_AS(verify_reciprocity_k2(ctx_of("chi3", "chi4", 2), Mat2(1, 0, 5, 1)), Error);
}

TEST_CASE("on Gamma_1 the constant term drops out") {
  std::mt19937_64 rng(32);
  SumContext ctx = ctx_of("chi3", "chi7", 2);
  for (int t = 0; t < 10; ++t) {
    Mat2 g = random_gamma1(rng, 21, 4);
    CHECK(sum_S_matrix(ctx, g) == Cyclotomic(Rational(ctx.chi1().parity())) * sum_S_matrix(ctx.swapped(), fricke_conjugate(g, 21)));
  }
}

TEST_CASE("general reciprocity, numerically") {
  SumContext c5 = ctx_of("chi5", "chi5", 4);
  std::mt19937_64 rng(33);
  for (int t = 0; t < 4; ++t) {
    Mat2 g = random_gamma0(rng, 25, 2);
    Cusp x = random_infinity_cusp(rng, 25, 2);
    if (cusp_apply(fricke_conjugate(g, 25), x).is_infinity()) continue;
    auto r = verify_reciprocity_general(c5, g, x);
    CHECK(r.pass);
    CHECK(r.residual < 1e-6 * r.scale);
  }
  // k = 2 agrees with the exact weight 2 check at the same gamma
  SumContext c2 = ctx_of("chi3", "chi4", 2);
  Mat2 g(5, 1, 24, 5);
  CHECK(verify_reciprocity_k2(c2, g).pass);
  CHECK(verify_reciprocity_general(c2, g, Cusp(1, 7)).residual < 1e-8);
  CHECK_THROWS_AS(verify_reciprocity_general(c2, g, Cusp(1, 2)), Error);
}

TEST_CASE("three-term relation and the Fricke twisted h") {
  SumContext ctx = ctx_of("5:1", "chi4", 2);
  Mat2 g(7, 1, 20, 3);
  for (Cusp x : {Cusp(3, 140), Cusp(1, 7), Cusp(-4, 9)}) {
    CHECK(three_term_residual(ctx, g, x).pass);
    CHECK(qmf_omega_residual(ctx, g, x).pass);
  }
}

TEST_CASE("report serialization") {
  nlohmann::json j = verify_reciprocity_k2(ctx_of("chi3", "chi4", 2), Mat2(5, 1, 24, 5));
  CHECK(j["pass"] == true);
  CHECK(j.contains("residual"));
}
