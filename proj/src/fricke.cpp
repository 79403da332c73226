#include "gds/fricke.hpp"

#include <cmath>

#include "gds/bernoulli.hpp"
#include "gds/error.hpp"

namespace gds {

Cusp fricke_apply(i64 N, const Cusp& x) {
  if (x.is_infinity()) return Cusp(0, 1);
  if (x.p == 0) return Cusp::infinity();
  return Cusp(-x.q, checked_mul(N, x.p));
}

Mat2 fricke_conjugate(const Mat2& g, i64 N) {
  if (!in_gamma0(g, N)) fail(ErrorKind::Membership, g.str() + " is not in Gamma_0(" + std::to_string(N) + ")");
  return Mat2(g.d, -(g.c / N), -checked_mul(g.b, N), g.a);
}

Cyclotomic shat_at_zero(const SumContext& ctx) {
  return pow(Rational(ctx.q1()), 2 - ctx.k()) * char_bernoulli(ctx.k() - 1, ctx.chi1(), Rational(0)) *
         char_bernoulli(1, ctx.chi2(), Rational(0));
}

Cyclotomic sum_S_matrix(const SumContext& ctx, const Mat2& g) {
  if (!in_gamma0(g, ctx.N())) fail(ErrorKind::Membership, g.str() + " is not in Gamma_0(" + std::to_string(ctx.N()) + ")");
  return shat(ctx, cusp_apply(g, Cusp::infinity()));
}

ExactReport verify_reciprocity_k2(const SumContext& ctx, const Mat2& g) {
  if (ctx.k() != 2) fail(ErrorKind::InvalidArgument, "exact reciprocity is for k = 2");
  Mat2 gp = fricke_conjugate(g, ctx.N());
  ExactReport r;
  r.lhs = sum_S_matrix(ctx, g);
  Cyclotomic one(Rational(1));
  r.rhs = Cyclotomic(Rational(ctx.chi1().parity())) * sum_S_matrix(ctx.swapped(), gp) + (one - ctx.psi(g)) * shat_at_zero(ctx);
  r.residual = r.lhs - r.rhs;
  r.pass = r.residual.is_zero();
  return r;
}

namespace {

double jpow(double j, int e) { return std::pow(j, e); }

cplx finish(NumericReport& r, std::initializer_list<cplx> terms, double tolerance) {
  double s = 1;
  for (cplx t : terms) s = std::max(s, std::abs(t));
  r.scale = s;
  r.residual = std::abs(r.lhs - r.rhs);
  r.pass = r.residual < tolerance * s;
  return r.lhs - r.rhs;
}

void check_sample(const SumContext& ctx, const Cusp& x) {
  if (x.is_infinity() || x.p == 0) fail(ErrorKind::InvalidArgument, "sample cusp must avoid 0 and infinity");
  if (x.q % ctx.N() != 0 && std::gcd(x.q, ctx.N()) != 1)
    fail(ErrorKind::Membership, "cusp " + x.str() + " is in neither the orbit of infinity nor of 0");
}

}  // namespace

NumericReport verify_reciprocity_general(const SumContext& ctx, const Mat2& g, const Cusp& x, const TruncationPolicy& policy,
                                         double tolerance) {
  check_sample(ctx, x);
  const int k = ctx.k();
  const i64 N = ctx.N();
  const double sN = std::sqrt(static_cast<double>(N));
  SumContext ctx2 = ctx.swapped();
  Mat2 gp = fricke_conjugate(g, N);
  Cusp gpx = cusp_apply(gp, x);
  if (gpx.is_infinity()) fail(ErrorKind::InvalidArgument, "sample cusp is the pole of gamma'");
  Cusp wx = fricke_apply(N, x);
  const double a = x.to_double();
  const double jp = cocycle_j(gp, x).to_double();
  const double jw = sN * a;
  cplx psi = ctx.psi(g).to_complex(), psip = ctx.psi(gp).to_complex();
  cplx R = fricke_constant(ctx), C1 = sum_prefactor(ctx);
  cplx tau_ratio = gauss_sum_c(ctx.chi1().conj()) / gauss_sum_c(ctx.chi2().conj());
  ExtElement omega_inv{true, -Mat2()};

  cplx s_gpx = shat_value(ctx, gpx, policy), s_x = shat_value(ctx, x, policy);
  cplx phi1 = period(ctx, {false, gp.inverse()}, 1.0, -a, policy);
  cplx phi2 = period(ctx, {false, g.inverse()}, 1.0, -wx.to_double(), policy);
  cplx s2_gpx = shat_value(ctx2, gpx, policy), s2_x = shat_value(ctx2, x, policy);
  cplx phi3 = period(ctx2, omega_inv, 1.0, -a, policy);
  cplx phi4 = period(ctx2, omega_inv, 1.0, -gpx.to_double(), policy);
  cplx s_wx = shat_value(ctx, wx, policy);

  NumericReport r;
  cplx t1 = jpow(jp, k - 2) * s_gpx, t2 = psip * s_x, t3 = C1 * psip * phi1, t4 = C1 * psi * jpow(jw, k - 2) * phi2;
  r.lhs = t1 - t2 + t3 - t4;
  cplx u1 = R * tau_ratio * (jpow(jp, k - 2) * s2_gpx - s2_x), u2 = C1 * R * (phi3 - jpow(jp, k - 2) * phi4),
       u3 = (1.0 - psi) * jpow(jw, k - 2) * s_wx;
  r.rhs = u1 + u2 + u3;
  finish(r, {t1, t2, t3, t4, u1, u2, u3}, tolerance);
  return r;
}

NumericReport three_term_residual(const SumContext& ctx, const Mat2& g, const Cusp& x, const TruncationPolicy& policy,
                                  double tolerance) {
  check_sample(ctx, x);
  const int k = ctx.k();
  const i64 N = ctx.N();
  const double sN = std::sqrt(static_cast<double>(N));
  Mat2 gp = fricke_conjugate(g, N);
  auto S = [&](const Cusp& y) { return shat_value(ctx, y, policy); };
  auto h = [&](const Mat2& m, const Cusp& y) -> cplx {
    Cusp my = cusp_apply(m, y);
    if (my.is_infinity()) return S(y);
    return S(y) - jpow(cocycle_j(m, y).to_double(), k - 2) * S(my);
  };
  auto h_omega = [&](const Cusp& y) -> cplx {
    if (y.p == 0) return S(y);
    return S(y) - jpow(sN * y.to_double(), k - 2) * S(fricke_apply(N, y));
  };
  Cusp wx = fricke_apply(N, x);
  Cusp gpx = cusp_apply(gp, x);
  if (gpx.is_infinity()) fail(ErrorKind::InvalidArgument, "sample cusp is the pole of gamma'");
  cplx t1 = jpow(sN * x.to_double(), k - 2) * h(g, wx);
  cplx t2 = h(gp, x);
  cplx t3 = h_omega(x);
  cplx t4 = jpow(cocycle_j(gp, x).to_double(), k - 2) * h_omega(gpx);
  NumericReport r;
  r.lhs = t1 + t3;
  r.rhs = t2 + t4;
  finish(r, {t1, t2, t3, t4}, tolerance);
  return r;
}

NumericReport qmf_omega_residual(const SumContext& ctx, const Mat2& g, const Cusp& x, const TruncationPolicy& policy,
                                 double tolerance) {
  check_sample(ctx, x);
  const int k = ctx.k();
  const i64 N = ctx.N();
  const double sN = std::sqrt(static_cast<double>(N));
  if (!in_gamma0(g, N)) fail(ErrorKind::Membership, g.str() + " is not in Gamma_0(" + std::to_string(N) + ")");
  SumContext ctx2 = ctx.swapped();
  Cusp y = fricke_apply(N, cusp_apply(g, x));
  const double j = sN * (static_cast<double>(g.a) * x.to_double() + static_cast<double>(g.b));
  cplx s_x = shat_value(ctx, x, policy);
  cplx lhs = s_x - jpow(j, k - 2) * shat_value(ctx, y, policy);
  cplx Rg = std::conj(ctx.psi(g).to_complex()) * fricke_constant(ctx);
  cplx tau_ratio = gauss_sum_c(ctx.chi1().conj()) / gauss_sum_c(ctx.chi2().conj());
  // (omega g)^{-1} = omega * (-(a, c/N; bN, d))
  Mat2 inv(-g.a, -(g.c / N), -checked_mul(g.b, N), -g.d);
  cplx t1 = sum_prefactor(ctx) * Rg * period(ctx2, {true, inv}, 1.0, -x.to_double(), policy);
  cplx t2 = Rg * tau_ratio * shat_value(ctx2, x, policy);
  NumericReport r;
  r.lhs = lhs;
  r.rhs = t1 - t2 + s_x;
  finish(r, {lhs, t1, t2, s_x}, tolerance);
  return r;
}

void to_json(nlohmann::json& j, const ExactReport& r) {
  j = nlohmann::json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"residual", r.residual}, {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const NumericReport& r) {
  auto c = [](cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
  j = nlohmann::json{{"lhs", c(r.lhs)}, {"rhs", c(r.rhs)}, {"residual", r.residual}, {"scale", r.scale}, {"pass", r.pass}};
}

}  // namespace gds
