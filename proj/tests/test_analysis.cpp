#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gds/analysis.hpp"
#include "gds/error.hpp"
#include "gds/verify.hpp"

using namespace gds;

namespace {

Rational q(long p, long d) { return Rational(Integer(p), Integer(d)); }
SumContext ctx_of(const char* a, const char* b, int k) { return SumContext(parse_character(a), parse_character(b), k); }

}  // namespace

TEST_CASE("display forms") {
  CHECK(display_scale(Rational(2), 3) == "2");
  CHECK(display_scale(q(3, 2), 4) == "6/4");
  CHECK(display_scale(q(7, 2), 4) == "14/4");
  CHECK(display_scale(q(2, 3), 3) == "2/3");
  CHECK(display_scale(q(4, 5), 5) == "4/5");
  CHECK(display_scale(q(1, 7), 3) == "1/7");
}

TEST_CASE("table cells at j = 50") {
  CHECK(image_scale(ctx_of("chi3", "chi3", 6), 50).r == q(10, 3));
  CHECK(image_scale(ctx_of("chi7", "chi3", 8), 50).r == Rational(2));
  CHECK(image_scale(ctx_of("chi3", "chi5", 9), 50).r == Rational(16));
  CHECK(image_scale(ctx_of("chi4", "chi5", 5), 50).r == Rational(4));
  CHECK_THROWS_AS(image_scale(ctx_of("5:1", "5:3", 4), 10), Error);
}

TEST_CASE("every swept value is a multiple of r and the gcd does not depend on thread count") {
  SumContext ctx = ctx_of("chi4", "chi7", 6);
  TableCell one = image_scale(ctx, 12, 1), many = image_scale(ctx, 12, 3);
  CHECK(one.r == many.r);
  CHECK(one.count == enumerate_G(28, 12).size());
  for (const auto& g : enumerate_G(28, 12)) CHECK(in_multiples(sum_S_tilde(ctx, g.a, g.c).rational_value(), one.r));
}

TEST_CASE("smaller sweeps only coarsen r") {
  for (const auto& layout : table_layouts())
    for (const auto& [a, b] : layout.pairs)
      for (int k : layout.ks) {
        SumContext ctx(named_character(a), named_character(b), k);
        Rational r10 = image_scale(ctx, 10).r, r20 = image_scale(ctx, 20).r;
        CHECK(in_multiples(r10, r20));
      }
}

TEST_CASE("polynomial space membership") {
  CHECK(poly_space_member(RationalPoly::monomial(q(-24, 5), 2), 4, Rational(6), 5));
  CHECK(poly_space_member(RationalPoly({q(-816, 25), q(4176, 5), Rational(-5340)}), 4, Rational(6), 5));
  CHECK(poly_space_member(RationalPoly(), 4, q(7, 3), 11));
  CHECK_FALSE(poly_space_member(RationalPoly::constant(q(1, 25)), 4, Rational(6), 5));
}

TEST_CASE("containment for the mod 5 pair") {
  ContainmentReport rep = containment_m(ctx_of("chi5", "chi5", 4));
  CHECK(rep.m == Rational(6));
  CHECK(rep.scale == q(6, 5));
  CHECK(rep.all_members);
  CHECK(rep.generator_count == gamma1_generators(25).size());
  for (const auto& P : rep.polys) CHECK(poly_space_member(P, 4, rep.m, 5));
}

TEST_CASE("containment does not depend on the generating set") {
  for (auto [a, b, k] : std::vector<std::tuple<const char*, const char*, int>>{{"chi5", "chi5", 4}, {"chi3", "chi3", 6}, {"chi4", "chi3", 4}}) {
    SumContext ctx = ctx_of(a, b, k);
    auto m1 = containment_m(ctx, gamma1_generators(ctx.N(), {Letter::S, Letter::T})).m;
    auto m2 = containment_m(ctx, gamma1_generators(ctx.N(), {Letter::T, Letter::S})).m;
    auto m3 = containment_m(ctx, gamma1_generators(ctx.N(), {Letter::Tinv, Letter::S})).m;
    CHECK(m1 == m2);
    CHECK(m1 == m3);
  }
}

TEST_CASE("table values lie in the containment lattice") {
  for (auto [a, b, k] : std::vector<std::tuple<const char*, const char*, int>>{{"chi3", "chi3", 4}, {"chi4", "chi3", 6}, {"chi8a", "chi3", 5}}) {
    SumContext ctx = ctx_of(a, b, k);
    CHECK(in_multiples(image_scale(ctx, 20).r, containment_m(ctx).scale));
  }
}

TEST_CASE("conjecture shape") {
  auto c = conjecture_shape(q(6, 5), 4, 5);
  CHECK(c.q1_form);
  CHECK(c.d == 6);
  CHECK(c.divides);
  auto d = conjecture_shape(Rational(14), 8, 4);
  CHECK(d.integral_form);
  CHECK(d.divides);
  CHECK_FALSE(conjecture_shape(Rational(5), 4, 3).divides);
}

TEST_CASE("trivial bound") {
  SumContext ctx = ctx_of("chi3", "chi3", 2);
  CHECK(std::abs(trivial_bound(ctx, 9) - 9 * 3 * std::numbers::pi * std::numbers::pi / (12 * std::numbers::pi)) < 1e-12);
  CHECK(trivial_bound(ctx, 18) > trivial_bound(ctx, 9));
  for (int k = 2; k <= 6; ++k) {
    if (k % 2) continue;
    SumContext c = ctx_of("chi3", "chi3", k);
    for (const auto& g : enumerate_G(9, 10)) {
      Rational s = abs(sum_S_rational(c, g.a, g.c));
      CHECK(s.to_double() <= trivial_bound(c, g.c));
      CHECK(within_trivial_bound(c, g.c, s));
    }
  }
  // exact comparison really is exact: slightly above the bound is rejected
  double b = trivial_bound(ctx, 9);
  CHECK_FALSE(within_trivial_bound(ctx, 9, Rational(mpq_class(b * (1 + 1e-9)))));
  CHECK(within_trivial_bound(ctx, 9, Rational(mpq_class(b * (1 - 1e-9)))));
}

TEST_CASE("bound statistics and exceptional counts") {
  SumContext ctx = ctx_of("chi3", "chi4", 4);
  BoundReport r = bound_statistics(ctx, 200);
  CHECK(r.count > 0);
  CHECK(r.bound_violations == 0);
  CHECK(r.delta_violations == 0);
  CHECK(r.max_ratio >= r.mean_ratio);
  std::size_t prev = exceptional_count(ctx, 0.0, 200);
  for (double alpha : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
    std::size_t n = exceptional_count(ctx, alpha, 200);
    CHECK(n <= prev);
    prev = n;
  }
}
