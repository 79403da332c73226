#include "gds/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "gds/analysis.hpp"
#include "gds/bernoulli.hpp"
#include "gds/error.hpp"
#include "gds/fricke.hpp"
#include "gds/oracle.hpp"
#include "gds/parallel.hpp"

namespace gds {

i64 uniform(Rng& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

namespace {

Mat2 complete(i64 c, i64 d, i64 shift) {
  i64 a = inverse_mod(mod_floor(d, c), c) + shift * c;
  i64 num = checked_add(checked_mul(a, d), -1);
  return Mat2(a, num / c, c, d);
}

}  // namespace

Mat2 random_gamma0(Rng& rng, i64 N, i64 max_mult) {
  i64 c = N * uniform(rng, 1, max_mult);
  i64 d;
  do d = uniform(rng, -c, c);
  while (std::gcd(d, c) != 1);
  return complete(c, d, uniform(rng, -2, 2));
}

Mat2 random_gamma1(Rng& rng, i64 N, i64 max_mult) {
  i64 c = N * uniform(rng, 1, max_mult);
  i64 d;
  do d = 1 + N * uniform(rng, -max_mult, max_mult);
  while (std::gcd(d, c) != 1);
  return complete(c, d, uniform(rng, -2, 2));
}

Cusp random_infinity_cusp(Rng& rng, i64 N, i64 max_mult) {
  i64 c = N * uniform(rng, 1, max_mult);
  i64 a;
  do a = uniform(rng, -3 * c, 3 * c);
  while (std::gcd(a, c) != 1);
  return Cusp(a, c);
}

std::vector<SumContext> quadratic_contexts(i64 max_N, int max_k) {
  std::vector<DirichletCharacter> chars;
  for (long q = 3; q <= max_N; ++q)
    for (auto& chi : primitive_characters(q))
      if (chi.is_quadratic()) chars.push_back(chi);
  std::vector<SumContext> out;
  for (const auto& a : chars)
    for (const auto& b : chars) {
      if (a.modulus() * b.modulus() > max_N) continue;
      for (int k = 2; k <= max_k; ++k)
        if (a.parity() * b.parity() == (k % 2 ? -1 : 1)) out.emplace_back(a, b, k);
    }
  return out;
}

std::vector<SumContext> all_contexts(i64 max_N, int max_k) {
  std::vector<DirichletCharacter> chars;
  for (long q = 3; q <= max_N; ++q)
    for (auto& chi : primitive_characters(q)) chars.push_back(chi);
  std::vector<SumContext> out;
  for (const auto& a : chars)
    for (const auto& b : chars) {
      if (a.modulus() * b.modulus() > max_N) continue;
      for (int k = 2; k <= max_k; ++k)
        if (a.parity() * b.parity() == (k % 2 ? -1 : 1)) out.emplace_back(a, b, k);
    }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point t0 = Clock::now();
  double seconds() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// seeds derived from the base seed and the check name, so suites are independent of run order
Rng make_rng(const VerifyOptions& opts, const std::string& name) {
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(std::hash<std::string>{}(name))};
  return Rng(seq);
}

std::string first_failure(const std::vector<std::string>& failures) {
  for (const auto& f : failures)
    if (!f.empty()) return f;
  return {};
}

std::size_t count_failures(const std::vector<std::string>& failures) {
  std::size_t n = 0;
  for (const auto& f : failures) n += !f.empty();
  return n;
}

CheckResult finish(std::string name, std::size_t cases, const std::vector<std::string>& failures, std::string detail,
                   const Timer& t) {
  CheckResult r;
  r.name = std::move(name);
  r.cases = cases;
  std::size_t bad = count_failures(failures);
  r.pass = bad == 0 && cases > 0;
  r.detail = bad ? std::to_string(bad) + " failures; first: " + first_failure(failures) : std::move(detail);
  r.seconds = t.seconds();
  return r;
}

SumContext named(const char* a, const char* b, int k) { return SumContext(parse_character(a), parse_character(b), k); }

}  // namespace

CheckResult check_crossed_hom_weight2(const VerifyOptions& opts, std::size_t samples) {
  Timer t;
  Rng rng = make_rng(opts, "crossed-hom-weight2");
  std::vector<SumContext> ctxs = {named("chi3", "chi3", 2), named("chi3", "chi4", 2), named("chi3", "chi7", 2)};
  struct Sample {
    std::size_t ctx;
    Mat2 g1, g2;
  };
  std::vector<Sample> work;
  auto pick = [&](i64 N) {
    i64 roll = uniform(rng, 0, 9);
    if (roll == 0) return Mat2::T(uniform(rng, -5, 5));
    Mat2 g = random_gamma0(rng, N, 4);
    return roll == 1 ? -g : g;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t i = s % ctxs.size();
    Mat2 g1 = pick(ctxs[i].N());
    Mat2 g2 = pick(ctxs[i].N());
    work.push_back({i, g1, g2});
  }
  std::vector<std::string> failures(work.size());
  parallel_for(
      work.size(),
      [&](std::size_t s) {
        const auto& [i, g1, g2] = work[s];
        const SumContext& ctx = ctxs[i];
        Cyclotomic lhs = sum_S_matrix(ctx, g1 * g2);
        Cyclotomic rhs = sum_S_matrix(ctx, g1) + ctx.psi(g1) * sum_S_matrix(ctx, g2);
        if (!(lhs == rhs)) failures[s] = ctx.str() + " " + g1.str() + " " + g2.str() + ": " + lhs.str() + " vs " + rhs.str();
      },
      opts.threads);
  return finish("crossed-hom weight 2", work.size(), failures, "exact over N in {9, 12, 21}", t);
}

CheckResult check_crossed_hom_h(const VerifyOptions& opts, std::size_t samples) {
  Timer t;
  Rng rng = make_rng(opts, "crossed-hom-h");
  std::vector<SumContext> ctxs = {named("chi5", "chi5", 4), named("chi3", "chi3", 6), named("5:1", "5:3", 4)};
  struct Sample {
    std::size_t ctx;
    Mat2 g1, g2;
  };
  std::vector<Sample> work = {{0, Mat2(26, 1, 25, 1), Mat2(51, 104, 25, 51)}, {0, Mat2(51, 104, 25, 51), Mat2(26, 1, 25, 1)}};
  while (work.size() < samples) {
    std::size_t i = work.size() % ctxs.size();
    i64 N = ctxs[i].N();
    work.push_back({i, random_gamma1(rng, N, 2), random_gamma1(rng, N, 2)});
  }
  std::vector<std::string> failures(work.size());
  parallel_for(
      work.size(),
      [&](std::size_t s) {
        const auto& [i, g1, g2] = work[s];
        const SumContext& ctx = ctxs[i];
        try {
          CyclotomicPoly lhs = h_interpolate(ctx, g1 * g2);
          CyclotomicPoly rhs = slash_poly(h_interpolate(ctx, g1), g2, ctx.k()) + h_interpolate(ctx, g2);
          if (!(lhs == rhs)) failures[s] = ctx.str() + " " + g1.str() + " " + g2.str() + ": " + lhs.str() + " vs " + rhs.str();
        } catch (const Error& e) {
          failures[s] = ctx.str() + " " + g1.str() + " " + g2.str() + ": " + e.what();
        }
      },
      opts.threads);
  return finish("crossed-hom h polynomials", work.size(), failures, "exact polynomial identities on Gamma_1", t);
}

CheckResult check_periodicity(const VerifyOptions& opts, std::size_t samples) {
  Timer t;
  Rng rng = make_rng(opts, "periodicity");
  auto ctxs = all_contexts(32, 6);
  std::vector<std::string> failures(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const SumContext& ctx = ctxs[static_cast<std::size_t>(uniform(rng, 0, static_cast<i64>(ctxs.size()) - 1))];
    Cusp x = random_infinity_cusp(rng, ctx.N(), 4);
    i64 n = uniform(rng, -50, 50);
    Cusp y(x.p + n * x.q, x.q);
    if (!(shat(ctx, x) == shat(ctx, y))) failures[s] = ctx.str() + " at " + x.str() + " shifted by " + std::to_string(n);
  }
  return finish("S-hat 1-periodicity", samples, failures, "exact on random cusps, all pairs with N <= 32", t);
}

CheckResult check_a_mod_c(const VerifyOptions& opts, std::size_t samples) {
  Timer t;
  Rng rng = make_rng(opts, "a-mod-c");
  auto ctxs = all_contexts(32, 6);
  std::vector<std::string> failures(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const SumContext& ctx = ctxs[static_cast<std::size_t>(uniform(rng, 0, static_cast<i64>(ctxs.size()) - 1))];
    Cusp x = random_infinity_cusp(rng, ctx.N(), 5);
    i64 m = uniform(rng, -20, 20);
    if (!(sum_S(ctx, x.p, x.q) == sum_S(ctx, x.p + m * x.q, x.q)))
      failures[s] = ctx.str() + " a=" + std::to_string(x.p) + " c=" + std::to_string(x.q) + " m=" + std::to_string(m);
  }
  return finish("sum_S invariance under a -> a + mc", samples, failures, "exact", t);
}

CheckResult check_gauss_sums(long max_q) {
  Timer t;
  std::vector<std::string> failures;
  std::size_t cases = 0;
  for (long q = 3; q <= max_q; ++q)
    for (const auto& chi : primitive_characters(q)) {
      ++cases;
      Cyclotomic lhs = gauss_sum(chi) * gauss_sum(chi.conj());
      if (!(lhs == Cyclotomic(Rational(chi.parity() * q)))) failures.push_back(chi.label() + ": " + lhs.str());
    }
  return finish("Gauss sum identity", cases, failures, "all primitive characters with q <= " + std::to_string(max_q), t);
}

CheckResult check_worpitzky(const VerifyOptions& opts, std::size_t samples) {
  Timer t;
  Rng rng = make_rng(opts, "worpitzky");
  std::vector<std::string> failures(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    int k = static_cast<int>(uniform(rng, 1, 8));
    i64 q = uniform(rng, 2, 60), p;
    do p = uniform(rng, -500, 500);
    while (p % q == 0);
    Rational x(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
    Rational w = worpitzky_eval(k, x), b = periodic_bernoulli(k, x);
    if (!(w == b)) failures[s] = "k=" + std::to_string(k) + " x=" + x.str() + ": " + w.str() + " vs " + b.str();
  }
  return finish("Worpitzky double sum vs periodic Bernoulli", samples, failures, "exact, k <= 8", t);
}

namespace {

struct SpaceSample {
  SumContext ctx;
  Rational m;
  RationalPoly P;
};

SpaceSample random_space_member(Rng& rng, const std::vector<SumContext>& ctxs) {
  const SumContext& ctx = ctxs[static_cast<std::size_t>(uniform(rng, 0, static_cast<i64>(ctxs.size()) - 1))];
  const int k = ctx.k();
  Rational m(Integer(static_cast<long>(uniform(rng, 1, 60))), Integer(static_cast<long>(uniform(rng, 1, 4))));
  std::vector<Rational> c(static_cast<std::size_t>(k - 1));
  for (int i = 0; i <= k - 2; ++i)
    c[static_cast<std::size_t>(i)] = m * Rational(uniform(rng, -30, 30)) / pow(Rational(ctx.q1()), k - 1 - i);
  return {ctx, m, RationalPoly(c)};
}

}  // namespace

CheckResult check_slash_stability(const VerifyOptions& opts, std::size_t samples) {
  Timer t;
  Rng rng = make_rng(opts, "slash-stability");
  auto ctxs = quadratic_contexts(32, 9);
  std::vector<std::string> failures(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    auto [ctx, m, P] = random_space_member(rng, ctxs);
    Mat2 g = random_gamma0(rng, ctx.N(), 6);
    if (!poly_space_member(P, ctx.k(), m, ctx.q1())) {
      failures[s] = "sampler produced a non-member";
      continue;
    }
    if (!poly_space_member(slash_poly(P, g, ctx.k()), ctx.k(), m, ctx.q1()))
      failures[s] = ctx.str() + " m=" + m.str() + " P=" + P.str() + " g=" + g.str();
  }
  return finish("polynomial space stable under Gamma_0 slash", samples, failures, "exact", t);
}

CheckResult check_evaluation_scaling(const VerifyOptions& opts, std::size_t samples) {
  Timer t;
  Rng rng = make_rng(opts, "evaluation-scaling");
  auto ctxs = quadratic_contexts(32, 9);
  std::vector<std::string> failures(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    auto [ctx, m, P] = random_space_member(rng, ctxs);
    Mat2 g = random_gamma1(rng, ctx.N(), 6);
    Rational v = pow(Rational(g.c), ctx.k() - 2) * P.eval(Rational(Integer(static_cast<long>(g.a)), Integer(static_cast<long>(g.c))));
    if (!in_multiples(v, m / Rational(ctx.q1())))
      failures[s] = ctx.str() + " m=" + m.str() + " P=" + P.str() + " g=" + g.str() + " value " + v.str();
  }
  return finish("scaled evaluation at gamma infinity lies in (m/q1)Z", samples, failures, "exact", t);
}

CheckResult check_oracle(const VerifyOptions& opts, std::size_t samples) {
  Timer t;
  Rng rng = make_rng(opts, "oracle");
  auto ctxs = all_contexts(25, 6);
  struct Sample {
    std::size_t ctx;
    Mat2 g;
  };
  std::vector<Sample> work;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<i64>(ctxs.size()) - 1));
    work.push_back({i, random_gamma0(rng, ctxs[i].N(), 3)});
  }
  std::vector<std::string> failures(work.size());
  std::vector<double> err(work.size());
  TruncationPolicy policy;
  policy.tolerance = opts.oracle_tolerance * 1e-2;
  parallel_for(
      work.size(),
      [&](std::size_t s) {
        const SumContext& ctx = ctxs[work[s].ctx];
        const Mat2& g = work[s].g;
        cplx num = sum_prefactor(ctx) * phi_numeric(ctx, g, 1.0, -static_cast<double>(g.a) / static_cast<double>(g.c), policy);
        cplx exact = sum_S(ctx, g.a, g.c).to_complex();
        err[s] = std::abs(num - exact);
        if (!(err[s] < opts.oracle_tolerance)) failures[s] = ctx.str() + " " + g.str() + " error " + sci(err[s]);
      },
      opts.threads);
  double worst = 0;
  for (double e : err) worst = std::max(worst, e);
  return finish("oracle vs exact sum", work.size(), failures, "max |difference| " + sci(worst), t);
}

CheckResult check_fricke_k2(const VerifyOptions& opts, std::size_t samples) {
  Timer t;
  Rng rng = make_rng(opts, "fricke-k2");
  std::vector<SumContext> ctxs = {named("chi3", "chi7", 2), named("chi3", "chi4", 2)};
  std::vector<std::string> failures;
  std::size_t cases = 0, twisted = 0;
  for (const auto& ctx : ctxs)
    for (std::size_t s = 0; s < samples; ++s) {
      // alternate between psi = 1 and psi = -1 so the constant term is exercised
      bool want_twist = s % 2 == 0;
      Mat2 g;
      do g = random_gamma0(rng, ctx.N(), 5);
      while ((ctx.psi(g) == Cyclotomic(Rational(1))) == want_twist);
      ++cases;
      auto r = verify_reciprocity_k2(ctx, g);
      if (want_twist && !shat_at_zero(ctx).is_zero()) ++twisted;
      if (!r.pass) failures.push_back(ctx.str() + " " + g.str() + " residual " + r.residual.str());
    }
  return finish("weight 2 reciprocity", cases, failures,
                "exact; " + std::to_string(twisted) + " cases with a nonzero constant term", t);
}

namespace {

Cusp random_sample_cusp(Rng& rng, const SumContext& ctx, const Mat2& g) {
  Mat2 gp = fricke_conjugate(g, ctx.N());
  for (;;) {
    Cusp x;
    if (uniform(rng, 0, 1)) {
      x = random_infinity_cusp(rng, ctx.N(), 3);
    } else {
      i64 q;
      do q = uniform(rng, 1, 40);
      while (std::gcd(q, ctx.N()) != 1);
      i64 p;
      do p = uniform(rng, -2 * q, 2 * q);
      while (p == 0 || std::gcd(p, q) != 1);
      x = Cusp(p, q);
    }
    if (x.p == 0 || cusp_apply(gp, x).is_infinity()) continue;
    return x;
  }
}

template <class Fn>
CheckResult numeric_identity(const std::string& name, const VerifyOptions& opts, std::size_t samples, Fn&& fn) {
  Timer t;
  Rng rng = make_rng(opts, name);
  std::vector<SumContext> ctxs;
  for (auto& ctx : all_contexts(25, 4))
    if (ctx.k() == 2 || ctx.k() == 4) ctxs.push_back(ctx);
  struct Sample {
    std::size_t ctx;
    Mat2 g;
    Cusp x;
  };
  std::vector<Sample> work;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<i64>(ctxs.size()) - 1));
    Mat2 g = random_gamma0(rng, ctxs[i].N(), 2);
    work.push_back({i, g, random_sample_cusp(rng, ctxs[i], g)});
  }
  std::vector<std::string> failures(work.size());
  std::vector<double> rel(work.size());
  parallel_for(
      work.size(),
      [&](std::size_t s) {
        const auto& [i, g, x] = work[s];
        try {
          NumericReport r = fn(ctxs[i], g, x);
          rel[s] = r.residual / r.scale;
          if (!r.pass) failures[s] = ctxs[i].str() + " " + g.str() + " at " + x.str() + " residual " + sci(r.residual);
        } catch (const Error& e) {
          failures[s] = ctxs[i].str() + " " + g.str() + " at " + x.str() + ": " + e.what();
        }
      },
      opts.threads);
  double worst = 0;
  for (double e : rel) worst = std::max(worst, e);
  return finish(name, work.size(), failures, "max relative residual " + sci(worst), t);
}

}  // namespace

CheckResult check_reciprocity_numeric(const VerifyOptions& opts, std::size_t samples) {
  return numeric_identity("general reciprocity", opts, samples, [](const SumContext& ctx, const Mat2& g, const Cusp& x) {
    return verify_reciprocity_general(ctx, g, x);
  });
}

CheckResult check_three_term(const VerifyOptions& opts, std::size_t samples) {
  CheckResult a = numeric_identity("three-term relation", opts, samples, [](const SumContext& ctx, const Mat2& g, const Cusp& x) {
    return three_term_residual(ctx, g, x);
  });
  CheckResult b = numeric_identity("Fricke twisted h", opts, samples, [](const SumContext& ctx, const Mat2& g, const Cusp& x) {
    return qmf_omega_residual(ctx, g, x);
  });
  CheckResult r;
  r.name = "three-term relation and Fricke twisted h";
  r.cases = a.cases + b.cases;
  r.pass = a.pass && b.pass;
  r.detail = a.detail + "; " + b.detail;
  r.seconds = a.seconds + b.seconds;
  return r;
}

CheckResult check_shat_zero(const VerifyOptions& opts) {
  Timer t;
  auto ctxs = quadratic_contexts(32, 6);
  std::vector<std::string> failures(ctxs.size());
  std::vector<double> err(ctxs.size());
  TruncationPolicy policy;
  policy.tolerance = opts.oracle_tolerance * 1e-2;
  parallel_for(
      ctxs.size(),
      [&](std::size_t i) {
        err[i] = std::abs(shat_numeric(ctxs[i], Cusp(0, 1), policy) - shat_at_zero(ctxs[i]).to_complex());
        if (!(err[i] < opts.oracle_tolerance)) failures[i] = ctxs[i].str() + " error " + sci(err[i]);
      },
      opts.threads);
  double worst = 0;
  for (double e : err) worst = std::max(worst, e);
  return finish("S-hat(0) exact vs numeric", ctxs.size(), failures, "max |difference| " + sci(worst), t);
}

CheckResult check_bounds(const VerifyOptions& opts, i64 C) {
  Timer t;
  auto ctxs = quadratic_contexts(32, 9);
  std::vector<std::string> failures;
  std::size_t cases = 0;
  double worst = 0;
  std::string worst_ctx;
  for (const auto& ctx : ctxs) {
    BoundReport r = bound_statistics(ctx, C, opts.threads);
    cases += r.count;
    if (r.max_ratio > worst) {
      worst = r.max_ratio;
      worst_ctx = ctx.str();
    }
    if (r.bound_violations)
      failures.push_back(ctx.str() + ": " + std::to_string(r.bound_violations) + " trivial bound violations");
    if (r.delta_violations)
      failures.push_back(ctx.str() + ": " + std::to_string(r.delta_violations) + " partial quotient gaps above 1");
  }
  return finish("trivial bound and partial quotient gap", cases, failures,
                std::to_string(ctxs.size()) + " contexts, C = " + std::to_string(C) + ", largest ratio " + sci(worst) +
                    " at " + worst_ctx,
                t);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"crossed-hom", "periodicity",         "gauss", "worpitzky", "slash-stability",
                                                 "evaluation-scaling",      "oracle",              "fricke-k2",
                                                 "reciprocity-numeric", "bounds"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& opts) {
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const auto& n : suite_names())
      for (auto& r : run_suite(n, opts)) out.push_back(std::move(r));
    return out;
  }
  if (name == "crossed-hom") return {check_crossed_hom_weight2(opts), check_crossed_hom_h(opts)};
  if (name == "periodicity") return {check_periodicity(opts), check_a_mod_c(opts)};
  if (name == "gauss") return {check_gauss_sums()};
  if (name == "worpitzky") return {check_worpitzky(opts)};
  if (name == "slash-stability") return {check_slash_stability(opts)};
  if (name == "evaluation-scaling") return {check_evaluation_scaling(opts)};
  if (name == "oracle") return {check_oracle(opts)};
  if (name == "fricke-k2") return {check_fricke_k2(opts)};
  if (name == "reciprocity-numeric") return {check_reciprocity_numeric(opts), check_shat_zero(opts), check_three_term(opts)};
  if (name == "bounds") return {check_bounds(opts)};
  fail(ErrorKind::InvalidArgument, "unknown suite: " + name);
}

void to_json(nlohmann::json& j, const CheckResult& r) {
  j = nlohmann::json{{"name", r.name}, {"pass", r.pass}, {"cases", r.cases}, {"detail", r.detail}, {"seconds", r.seconds}};
}

}  // namespace gds
