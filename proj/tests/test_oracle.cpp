#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gds/error.hpp"
#include "gds/fricke.hpp"
#include "gds/oracle.hpp"
#include "gds/verify.hpp"

using namespace gds;

namespace {

SumContext ctx_of(const char* a, const char* b, int k) { return SumContext(parse_character(a), parse_character(b), k); }

cplx mobius(const Mat2& g, cplx z) {
  return (static_cast<double>(g.a) * z + static_cast<double>(g.b)) / (static_cast<double>(g.c) * z + static_cast<double>(g.d));
}

// composite Simpson along a straight segment
cplx quadrature(const SumContext& ctx, cplx s, cplx t, int panels) {
  cplx h = (t - s) / static_cast<double>(panels);
  cplx acc = eisenstein_eval(ctx, s) + eisenstein_eval(ctx, t);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * eisenstein_eval(ctx, s + static_cast<double>(i) * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("leading Fourier term dominates high in the upper half plane") {
  for (const auto& ctx : {ctx_of("chi3", "chi4", 2), ctx_of("5:1", "5:3", 4), ctx_of("chi4", "chi5", 3)}) {
    cplx z(0.3, 10);
    cplx lead = 2.0 * std::exp(cplx(0, 2 * std::numbers::pi) * z);
    CHECK(std::abs(eisenstein_eval(ctx, z) / lead - 1.0) < 1e-10);
  }
}

TEST_CASE("modularity of the Eisenstein series") {
  std::mt19937_64 rng(21);
  for (const auto& ctx : {ctx_of("chi3", "chi4", 2), ctx_of("chi5", "chi5", 4), ctx_of("5:1", "chi5", 3)}) {
    for (int t = 0; t < 5; ++t) {
      Mat2 g = random_gamma0(rng, ctx.N(), 2);
      cplx z(1.0 / 3, 0.5);
      cplx j = static_cast<double>(g.c) * z + static_cast<double>(g.d);
      cplx ratio = eisenstein_eval(ctx, mobius(g, z)) / std::pow(j, ctx.k()) / eisenstein_eval(ctx, z);
      CHECK(std::abs(ratio - ctx.psi(g).to_complex()) < 1e-6);
    }
  }
}

TEST_CASE("truncation tail bounds the effect of doubling the cutoff") {
  SumContext ctx = ctx_of("chi3", "chi7", 4);
  cplx z(0.1, 0.05);
  SeriesInfo info;
  cplx v = eisenstein_eval(ctx, z, {}, &info);
  TruncationPolicy twice;
  twice.n_max = 2 * info.n_max;
  cplx w = eisenstein_eval(ctx, z, twice);
  CHECK(std::abs(v - w) <= info.tail);
  CHECK(info.tail < 1e-8);
  TruncationPolicy tiny;
  tiny.cap = 10;
  CHECK_THROWS_AS(eisenstein_eval(ctx, cplx(0, 1e-3), tiny), Error);
}

TEST_CASE("antiderivative segments") {
  SumContext ctx = ctx_of("chi5", "chi5", 4);
  cplx s(0.2, 0.3), t(-0.1, 0.7), u(0.4, 0.15);
  CHECK(antiderivative_segment(ctx, s, s, 1.0, 0.5) == cplx(0, 0));
  cplx whole = antiderivative_segment(ctx, s, u, 1.0, 0.5), split = antiderivative_segment(ctx, s, t, 1.0, 0.5) + antiderivative_segment(ctx, t, u, 1.0, 0.5);
  CHECK(std::abs(whole - split) < 2e-8);
  SumContext c2 = ctx_of("chi3", "chi4", 2);
  cplx a(0, 0.2), b(0, 0.9);
  CHECK(std::abs(antiderivative_segment(c2, a, b, 0.0, 1.0) - quadrature(c2, a, b, 2000)) < 1e-7);
}

TEST_CASE("the period formula reproduces the exact sums") {
  std::mt19937_64 rng(22);
  for (const auto& ctx : all_contexts(25, 6)) {
    Mat2 g = random_gamma0(rng, ctx.N(), 2);
    cplx num = sum_prefactor(ctx) * phi_numeric(ctx, g, 1.0, -static_cast<double>(g.a) / static_cast<double>(g.c));
    CHECK(std::abs(num - sum_S(ctx, g.a, g.c).to_complex()) < 1e-8);
  }
}

TEST_CASE("base point independence") {
  std::mt19937_64 rng(23);
  for (const auto& ctx : {ctx_of("chi3", "chi3", 4), ctx_of("5:1", "5:3", 2), ctx_of("chi4", "chi5", 5)}) {
    Mat2 g = random_gamma0(rng, ctx.N(), 2);
    for (cplx X : {cplx(1, 0), cplx(0.3, -0.2)}) {
      cplx Y(-0.7, 0.1);
      CHECK(std::abs(phi_numeric(ctx, g, X, Y, {}, 1.0) - phi_numeric(ctx, g, X, Y, {}, 2.0)) < 1e-8);
    }
  }
}

TEST_CASE("weight 2 periods do not depend on X and Y") {
  SumContext ctx = ctx_of("chi3", "chi7", 2);
  Mat2 g(5, 1, 84, 17);
  cplx base = phi_numeric(ctx, g, 1.0, 0.0);
  for (auto [X, Y] : std::vector<std::pair<cplx, cplx>>{{0.0, 1.0}, {2.5, -1.0}, {cplx(0, 1), cplx(3, 3)}})
    CHECK(std::abs(phi_numeric(ctx, g, X, Y) - base) < 1e-8);
  CHECK_THROWS_AS(phi_numeric(ctx, Mat2::T(2), 1.0, 0.0), Error);
}

TEST_CASE("crossed homomorphism of periods in general X, Y") {
  std::mt19937_64 rng(24);
  for (const auto& ctx : {ctx_of("chi5", "chi5", 4), ctx_of("chi3", "chi4", 6), ctx_of("5:1", "chi4", 2)}) {
    for (int t = 0; t < 4; ++t) {
      Mat2 g1 = random_gamma0(rng, ctx.N(), 2), g2 = random_gamma0(rng, ctx.N(), 2);
      Mat2 g = g1 * g2;
      if (g.c == 0) continue;
      cplx X(0.7, 0.2), Y(-0.4, 1.1);
      cplx lhs = phi_numeric(ctx, g, X, Y);
      cplx rhs = phi_numeric(ctx, g1, X, Y) +
                 ctx.psi(g1).to_complex() * phi_numeric(ctx, g2, static_cast<double>(g1.a) * X + static_cast<double>(g1.c) * Y,
                                                        static_cast<double>(g1.b) * X + static_cast<double>(g1.d) * Y);
      CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("Fricke transformation of the Eisenstein series") {
  for (const auto& ctx : {ctx_of("chi3", "chi4", 2), ctx_of("5:1", "5:1", 2), ctx_of("5:1", "chi5", 3), ctx_of("chi4", "chi5", 3), ctx_of("chi8a", "chi3", 5)}) {
    const double N = static_cast<double>(ctx.N());
    cplx z(0.13, 0.4);
    cplx lhs = std::pow(std::sqrt(N) * z, -ctx.k()) * eisenstein_eval(ctx, -1.0 / (N * z));
    cplx rhs = fricke_constant(ctx) * eisenstein_eval(ctx.swapped(), z);
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(lhs)));
  }
  SumContext same = ctx_of("chi5", "chi5", 4);
  CHECK(std::abs(fricke_constant(same) - cplx(same.chi1().parity(), 0)) < 1e-12);
}

TEST_CASE("numeric S-hat on both cusp orbits") {
  std::mt19937_64 rng(25);
  for (const auto& ctx : {ctx_of("chi3", "chi3", 4), ctx_of("5:1", "5:3", 4), ctx_of("chi3", "chi7", 2)}) {
    CHECK(shat_numeric(ctx, Cusp::infinity()) == cplx(0, 0));
    CHECK(std::abs(shat_numeric(ctx, Cusp(0, 1)) - shat_at_zero(ctx).to_complex()) < 1e-8);
    for (int t = 0; t < 4; ++t) {
      Cusp x = cusp_apply(random_gamma1(rng, ctx.N(), 2), Cusp::infinity());
      CHECK(std::abs(shat_numeric(ctx, x) - shat(ctx, x).to_complex()) < 1e-8);
    }
    CHECK(std::abs(shat_numeric(ctx, Cusp(3, 1)) - shat_numeric(ctx, Cusp(0, 1))) < 1e-8);
  }
  SumContext c = ctx_of("chi3", "chi4", 2);
  CHECK_THROWS_AS(shat_numeric(c, Cusp(1, 2)), Error);
}
