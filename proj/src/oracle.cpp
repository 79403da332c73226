#include "gds/oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gds/error.hpp"

namespace gds {

namespace {

constexpr double kPi = std::numbers::pi;

// sum_{n > M} n^a exp(-2 pi n y)
double tail_sum(std::size_t M, double a, double y) {
  double r = 2 * kPi * y;
  double sum = 0;
  double peak = a / r;
  for (std::size_t n = M + 1;; ++n) {
    double t = std::exp(a * std::log(static_cast<double>(n)) - r * static_cast<double>(n));
    sum += t;
    if (static_cast<double>(n) > peak && t < 1e-18 * sum) break;
    if (static_cast<double>(n) > peak && t == 0) break;
    if (n > M + 50'000'000) break;
  }
  return sum;
}

std::size_t choose_cutoff(double scale, double a, double y, const TruncationPolicy& policy, double* tail) {
  if (y <= 0) fail(ErrorKind::Numeric, "series evaluated off the upper half plane");
  double target = policy.tolerance * 0.01;
  if (policy.n_max > 0) {
    *tail = scale * tail_sum(policy.n_max, a, y);
    if (*tail > policy.tolerance)
      fail(ErrorKind::Numeric, "tail estimate " + std::to_string(*tail) + " exceeds tolerance at N_max = " + std::to_string(policy.n_max));
    return policy.n_max;
  }
  std::size_t M = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(1.0 / (2 * kPi * y))));
  for (;;) {
    *tail = scale * tail_sum(M, a, y);
    if (*tail < target) return M;
    if (M > policy.cap)
      fail(ErrorKind::Numeric, "series needs more than " + std::to_string(policy.cap) + " terms at height " + std::to_string(y) +
                                   "; raise the cap or the evaluation height");
    M = M * 3 / 2 + 1;
  }
}

cplx expo(double n, cplx w) {
  double frac = n * w.real();
  frac -= std::floor(frac);
  return std::polar(std::exp(-2 * kPi * n * w.imag()), 2 * kPi * frac);
}

std::vector<cplx> char_values(const DirichletCharacter& chi, bool conjugate) {
  std::vector<cplx> v(static_cast<std::size_t>(chi.modulus()));
  for (long n = 0; n < chi.modulus(); ++n) v[static_cast<std::size_t>(n)] = conjugate ? std::conj(chi.cvalue(n)) : chi.cvalue(n);
  return v;
}

}  // namespace

cplx gauss_sum_c(const DirichletCharacter& chi) {
  cplx s = 0;
  for (long n = 0; n < chi.modulus(); ++n) s += chi.cvalue(n) * std::polar(1.0, 2 * kPi * static_cast<double>(n) / static_cast<double>(chi.modulus()));
  return s;
}

cplx fricke_constant(const SumContext& ctx) {
  double ratio = std::pow(static_cast<double>(ctx.q2()) / static_cast<double>(ctx.q1()), ctx.k() / 2.0);
  return static_cast<double>(ctx.chi1().parity()) * gauss_sum_c(ctx.chi1()) / gauss_sum_c(ctx.chi2()) * ratio;
}

cplx sum_prefactor(const SumContext& ctx) {
  double sign = ctx.k() % 2 == 0 ? 1.0 : -1.0;
  return sign * gauss_sum_c(ctx.chi1().conj()) * static_cast<double>(ctx.k() - 1);
}

cplx eisenstein_eval(const SumContext& ctx, cplx z, const TruncationPolicy& policy, SeriesInfo* info) {
  const int k = ctx.k();
  double tail = 0;
  std::size_t M = choose_cutoff(4.0, k - 0.5, z.imag(), policy, &tail);
  auto c1 = char_values(ctx.chi1(), false);
  auto c2 = char_values(ctx.chi2(), true);
  std::vector<cplx> coef(M + 1);
  for (std::size_t A = 1; A <= M; ++A) {
    cplx x = c1[A % c1.size()];
    if (x == 0.0) continue;
    for (std::size_t B = 1; A * B <= M; ++B) {
      cplx y = c2[B % c2.size()];
      if (y == 0.0) continue;
      coef[A * B] += x * y * std::pow(static_cast<double>(B), k - 1);
    }
  }
  cplx sum = 0;
  for (std::size_t n = M; n >= 1; --n)
    if (coef[n] != 0.0) sum += coef[n] * expo(static_cast<double>(n), z);
  if (info) *info = {M, tail};
  return 2.0 * sum;
}

cplx antiderivative(const SumContext& ctx, cplx w, cplx X, cplx Y, const TruncationPolicy& policy, SeriesInfo* info) {
  const int k = ctx.k();
  // c_n = -p_n / (-2 pi i)^{n+1} with p_n the n-th derivative of (Xz+Y)^{k-2} at w
  std::vector<cplx> cn(static_cast<std::size_t>(k - 1));
  double P = 0;
  const cplx m2pii(0, -2 * kPi);
  double falling = 1;
  for (int n = 0; n <= k - 2; ++n) {
    cplx pn = std::pow(X, n) * falling * std::pow(X * w + Y, k - 2 - n);
    cn[static_cast<std::size_t>(n)] = -pn / std::pow(m2pii, n + 1);
    P += std::abs(pn) / std::pow(2 * kPi, n + 1);
    falling *= static_cast<double>(k - 2 - n);
  }
  double tail = 0;
  std::size_t M = choose_cutoff(4.0 * std::max(P, 1e-300), k - 1.5, w.imag(), policy, &tail);
  auto c1 = char_values(ctx.chi1(), false);
  auto c2 = char_values(ctx.chi2(), true);
  std::vector<cplx> ew(M + 1);
  for (std::size_t n = 1; n <= M; ++n) ew[n] = expo(static_cast<double>(n), w);
  std::vector<double> bpow(static_cast<std::size_t>(k - 1)), apow(static_cast<std::size_t>(k - 1));
  cplx sum = 0;
  for (std::size_t A = 1; A <= M; ++A) {
    cplx x = c1[A % c1.size()];
    if (x == 0.0) continue;
    double a = static_cast<double>(A);
    for (int n = 0; n <= k - 2; ++n) apow[static_cast<std::size_t>(n)] = std::pow(a, n + 1);
    cplx inner_sum = 0;
    for (std::size_t B = 1; A * B <= M; ++B) {
      cplx y = c2[B % c2.size()];
      if (y == 0.0) continue;
      double b = static_cast<double>(B);
      cplx inner = 0;
      double bp = 1;
      // n = k-2 down to 0 so that B^{k-2-n} grows with the loop
      for (int n = k - 2; n >= 0; --n) {
        inner += cn[static_cast<std::size_t>(n)] * (bp / apow[static_cast<std::size_t>(n)]);
        bp *= b;
      }
      inner_sum += y * inner * ew[A * B];
    }
    sum += x * inner_sum;
  }
  if (info) *info = {M, tail};
  return 2.0 * sum;
}

cplx antiderivative_segment(const SumContext& ctx, cplx s, cplx s2, cplx X, cplx Y, const TruncationPolicy& policy) {
  if (s == s2) return 0;
  return antiderivative(ctx, s2, X, Y, policy) - antiderivative(ctx, s, X, Y, policy);
}

std::array<double, 4> real_matrix(const SumContext& ctx, const ExtElement& x) {
  const auto& g = x.g;
  if (!x.omega) return {static_cast<double>(g.a), static_cast<double>(g.b), static_cast<double>(g.c), static_cast<double>(g.d)};
  double s = std::sqrt(static_cast<double>(ctx.N()));
  return {-static_cast<double>(g.c) / s, -static_cast<double>(g.d) / s, s * static_cast<double>(g.a), s * static_cast<double>(g.b)};
}

cplx slash_constant(const SumContext& ctx, const ExtElement& x, bool* swapped) {
  if (!in_gamma0(x.g, ctx.N())) fail(ErrorKind::Membership, x.g.str() + " is not in Gamma_0(" + std::to_string(ctx.N()) + ")");
  if (swapped) *swapped = x.omega;
  if (!x.omega) return ctx.chi1().cvalue(x.g.d) * std::conj(ctx.chi2().cvalue(x.g.d));
  return fricke_constant(ctx) * ctx.chi2().cvalue(x.g.d) * std::conj(ctx.chi1().cvalue(x.g.d));
}

cplx period(const SumContext& ctx, const ExtElement& x, cplx X, cplx Y, const TruncationPolicy& policy, double t) {
  auto [al, be, ga, de] = real_matrix(ctx, x);
  bool swapped = false;
  cplx kappa = slash_constant(ctx, x, &swapped);
  if (ga == 0) return 0;
  if (ga < 0) {
    al = -al;
    be = -be;
    ga = -ga;
    de = -de;
    if (ctx.k() % 2) kappa = -kappa;
  }
  cplx w(al / ga, 1.0 / (ga * t));
  cplx u(-de / ga, t / ga);
  SumContext other = swapped ? ctx.swapped() : ctx;
  return antiderivative(ctx, w, X, Y, policy) - kappa * antiderivative(other, u, al * X + ga * Y, be * X + de * Y, policy);
}

cplx phi_numeric(const SumContext& ctx, const Mat2& g, cplx X, cplx Y, const TruncationPolicy& policy, double t) {
  if (g.c == 0) fail(ErrorKind::InvalidArgument, "phi_numeric needs c != 0");
  return period(ctx, {false, g}, X, Y, policy, t);
}

ExtElement cusp_witness(const SumContext& ctx, const Cusp& x) {
  const i64 N = ctx.N();
  if (x.is_infinity()) return {false, Mat2()};
  if (x.q % N == 0) {
    i64 d = inverse_mod(x.p, x.q);
    i64 b = (checked_mul(x.p, d) - 1) / x.q;
    return {false, Mat2(x.p, b, x.q, d)};
  }
  if (std::gcd(x.q, N) != 1)
    fail(ErrorKind::Membership, "cusp " + x.str() + " is in neither the orbit of infinity nor of 0");
  if (x.p == 0) return {true, Mat2()};
  // omega (q, b; -Np, d) sends infinity to p/q
  i64 a = x.q, c = -checked_mul(N, x.p);
  i64 d = inverse_mod(a, c < 0 ? -c : c);
  i64 b = (checked_mul(a, d) - 1) / c;
  return {true, Mat2(a, b, c, d)};
}

cplx shat_numeric(const SumContext& ctx, const Cusp& x, const TruncationPolicy& policy) {
  if (x.is_infinity()) return 0;
  ExtElement w = cusp_witness(ctx, x);
  double v = static_cast<double>(x.p) / static_cast<double>(x.q);
  return sum_prefactor(ctx) * period(ctx, w, 1.0, -v, policy);
}

cplx shat_value(const SumContext& ctx, const Cusp& x, const TruncationPolicy& policy) {
  if (x.is_infinity() || x.q % ctx.N() == 0) return shat(ctx, x).to_complex();
  return shat_numeric(ctx, x, policy);
}

}  // namespace gds
