#include "gds/dedekind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "gds/bernoulli.hpp"
#include "gds/error.hpp"

namespace gds {

SumContext::SumContext(DirichletCharacter chi1, DirichletCharacter chi2, int k)
    : chi1_(std::move(chi1)), chi2_(std::move(chi2)), k_(k) {
  if (k_ < 2) fail(ErrorKind::InvalidArgument, "k must be at least 2");
  for (const auto* chi : {&chi1_, &chi2_}) {
    if (chi->is_trivial()) fail(ErrorKind::InvalidArgument, "character " + chi->label() + " is trivial");
    if (!chi->is_primitive()) fail(ErrorKind::InvalidArgument, "character " + chi->label() + " is not primitive");
  }
  int want = (k_ % 2 == 0) ? 1 : -1;
  if (chi1_.parity() * chi2_.parity() != want)
    fail(ErrorKind::Parity, "parity mismatch: " + chi1_.label() + "*" + chi2_.label() + "(-1) = " +
                                std::to_string(chi1_.parity() * chi2_.parity()) + " but (-1)^" + std::to_string(k_) +
                                " = " + std::to_string(want));
  order_ = std::lcm(chi1_.order(), chi2_.order());
}

std::string SumContext::str() const { return "(" + chi1_.label() + "," + chi2_.label() + ",k=" + std::to_string(k_) + ")"; }

Cyclotomic SumContext::psi(const Mat2& g) const { return central_character(chi1_, chi2_, g); }

SumContext parse_context(std::string_view pair, int k) {
  auto comma = pair.find(',');
  if (comma == std::string_view::npos) fail(ErrorKind::UnknownCharacter, "pair must look like chi3,chi4: " + std::string(pair));
  return SumContext(parse_character(pair.substr(0, comma)), parse_character(pair.substr(comma + 1)), k);
}

Rational classical_s(i64 h, i64 k) {
  if (k <= 0) fail(ErrorKind::InvalidArgument, "k must be positive");
  if (std::gcd(h, k) != 1) fail(ErrorKind::InvalidArgument, "s(h,k) needs gcd(h,k) = 1");
  Rational total;
  for (i64 n = 1; n <= k; ++n) {
    Rational x(Integer(static_cast<long>(n)), Integer(static_cast<long>(k)));
    Rational y(Integer(static_cast<long>(mod_floor(static_cast<i64>(static_cast<__int128>(h) * n % k), k))),
               Integer(static_cast<long>(k)));
    total += periodic_bernoulli(1, x) * periodic_bernoulli(1, y);
  }
  return total;
}

namespace {

constexpr long double kWideLimit = 0x1p124L;

Integer to_integer(__int128 v) { return integer_from_i128(v); }

__int128 to_i128(const Integer& v) {
  Integer hi = v >> 64;
  Integer lo = v - (hi << 64);
  __int128 r = static_cast<__int128>(hi.get_si());
  r <<= 64;
  r += static_cast<__int128>(static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t())));
  return r;
}

Integer ipow(i64 c, int e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(c), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

DenominatorTable::DenominatorTable(const SumContext& ctx, i64 c)
    : c_(c), k_(ctx.k()), quadratic_(ctx.quadratic()), M_(ctx.value_order()) {
  if (c <= 0) fail(ErrorKind::InvalidArgument, "c must be positive");
  if (c % ctx.N() != 0)
    fail(ErrorKind::Membership, "c = " + std::to_string(c) + " is not divisible by N = " + std::to_string(ctx.N()));
  const int k = ctx.k();
  const long q1 = ctx.q1(), q2 = ctx.q2();
  const i64 c1 = c / q1;

  Integer D = bernoulli_denominator_lcm(k - 1);
  // V(t) = D c^{k-1} B_{k-1}(t/c) = sum_i binom(k-1, i) D B_i t^{k-1-i} c^i
  std::vector<Integer> coef(static_cast<std::size_t>(k));
  long double bound = 0;
  for (int i = 0; i < k; ++i) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k - 1), static_cast<unsigned long>(i));
    Rational ci = Rational(Integer(b * D)) * bernoulli_number(i);
    coef[static_cast<std::size_t>(k - 1 - i)] = ci.num() * ipow(c, i);
    bound += std::fabs(ci.to_double()) * std::pow(static_cast<long double>(c), k - 1);
  }
  scale_ = 2 * D * Integer(static_cast<long>(c)) * Integer(static_cast<long>(c));

  std::vector<int> e1(static_cast<std::size_t>(q1));
  auto chi1bar = ctx.chi1().conj();
  auto chi2bar = ctx.chi2().conj();
  for (long n = 0; n < q1; ++n) {
    int e = chi1bar.exponent(n);
    e1[static_cast<std::size_t>(n)] = e < 0 ? -1 : static_cast<int>(e * (M_ / chi1bar.order()));
  }
  e2_.resize(static_cast<std::size_t>(q2));
  for (long n = 0; n < q2; ++n) {
    int e = chi2bar.exponent(n);
    e2_[static_cast<std::size_t>(n)] = e < 0 ? -1 : static_cast<int>(e * (M_ / chi2bar.order()));
  }

  const std::size_t cs = static_cast<std::size_t>(c);
  wide_ = bound >= kWideLimit;
  if (!wide_) {
    std::vector<__int128> V(cs, 0);
    std::vector<__int128> cf(coef.size());
    for (std::size_t i = 0; i < coef.size(); ++i) cf[i] = to_i128(coef[i]);
    __int128 vmax = 0;
    for (i64 t = 1; t < c; ++t) {
      __int128 acc = 0;
      for (std::size_t i = cf.size(); i-- > 0;) acc = acc * t + cf[i];
      V[static_cast<std::size_t>(t)] = acc;
      vmax = std::max(vmax, acc < 0 ? -acc : acc);
    }
    long double acc_bound = static_cast<long double>(vmax) * static_cast<long double>(c) * static_cast<long double>(c) * q1;
    if (acc_bound < kWideLimit) {
      f128_.assign(cs * M_, 0);
      for (i64 u = 0; u < c; ++u)
        for (long n = 0; n < q1; ++n) {
          int e = e1[static_cast<std::size_t>(n)];
          if (e < 0) continue;
          i64 t = static_cast<i64>((static_cast<__int128>(n) * c1 + u) % c);
          f128_[static_cast<std::size_t>(u) * M_ + static_cast<std::size_t>(e)] += V[static_cast<std::size_t>(t)];
        }
      return;
    }
    wide_ = true;
  }
  std::vector<Integer> V(cs);
  for (i64 t = 1; t < c; ++t) {
    Integer acc = 0, tt = static_cast<long>(t);
    for (std::size_t i = coef.size(); i-- > 0;) acc = acc * tt + coef[i];
    V[static_cast<std::size_t>(t)] = acc;
  }
  fbig_.assign(cs * M_, Integer(0));
  for (i64 u = 0; u < c; ++u)
    for (long n = 0; n < q1; ++n) {
      int e = e1[static_cast<std::size_t>(n)];
      if (e < 0) continue;
      i64 t = static_cast<i64>((static_cast<__int128>(n) * c1 + u) % c);
      fbig_[static_cast<std::size_t>(u) * M_ + static_cast<std::size_t>(e)] += V[static_cast<std::size_t>(t)];
    }
}

std::vector<Integer> DenominatorTable::accumulate(i64 a) const {
  if (std::gcd(a, c_) != 1)
    fail(ErrorKind::InvalidArgument, "gcd(a, c) must be 1 for a = " + std::to_string(a) + ", c = " + std::to_string(c_));
  const i64 ar = mod_floor(a, c_);
  const std::size_t q2 = e2_.size();
  std::vector<Integer> out(M_);
  if (!wide_) {
    std::vector<__int128> acc(M_, 0);
    for (i64 j = 1; j < c_; ++j) {
      int e2 = e2_[static_cast<std::size_t>(j) % q2];
      if (e2 < 0) continue;
      i64 u = static_cast<i64>(static_cast<__int128>(ar) * j % c_);
      __int128 w = 2 * j - c_;
      const __int128* f = &f128_[static_cast<std::size_t>(u) * M_];
      for (unsigned e = 0; e < M_; ++e) {
        if (f[e] == 0) continue;
        acc[(e + static_cast<unsigned>(e2)) % M_] += w * f[e];
      }
    }
    for (unsigned e = 0; e < M_; ++e) out[e] = to_integer(acc[e]);
    return out;
  }
  for (i64 j = 1; j < c_; ++j) {
    int e2 = e2_[static_cast<std::size_t>(j) % q2];
    if (e2 < 0) continue;
    i64 u = static_cast<i64>(static_cast<__int128>(ar) * j % c_);
    Integer w = static_cast<long>(2 * j - c_);
    const Integer* f = &fbig_[static_cast<std::size_t>(u) * M_];
    for (unsigned e = 0; e < M_; ++e) {
      if (f[e] == 0) continue;
      out[(e + static_cast<unsigned>(e2)) % M_] += w * f[e];
    }
  }
  return out;
}

Cyclotomic DenominatorTable::S_tilde(i64 a) const { return Cyclotomic::from_exponent_sums(M_, accumulate(a), scale_); }

Cyclotomic DenominatorTable::S(i64 a) const { return S_tilde(a) / Rational(ipow(c_, k_ - 2)); }

Rational DenominatorTable::S_tilde_rational(i64 a) const {
  if (!quadratic_) fail(ErrorKind::InvalidArgument, "rational S needs two real characters");
  auto acc = accumulate(a);
  Integer v = acc[0];
  if (M_ == 2) v -= acc[1];
  return Rational(v, scale_);
}

Rational DenominatorTable::S_rational(i64 a) const { return S_tilde_rational(a) / Rational(ipow(c_, k_ - 2)); }

Cyclotomic sum_S(const SumContext& ctx, i64 a, i64 c) { return DenominatorTable(ctx, c).S(a); }
Cyclotomic sum_S_tilde(const SumContext& ctx, i64 a, i64 c) { return DenominatorTable(ctx, c).S_tilde(a); }
Rational sum_S_rational(const SumContext& ctx, i64 a, i64 c) { return DenominatorTable(ctx, c).S_rational(a); }

Cyclotomic shat(const SumContext& ctx, const Cusp& x) {
  if (x.is_infinity()) return Cyclotomic(Rational(), ctx.value_order());
  if (x.q % ctx.N() != 0)
    fail(ErrorKind::Membership, "cusp " + x.str() + " is not in the orbit of infinity under Gamma_0(" + std::to_string(ctx.N()) + ")");
  return sum_S(ctx, x.p, x.q);
}

Cyclotomic h_eval(const SumContext& ctx, const Mat2& g, const Cusp& x) {
  if (!in_gamma0(g, ctx.N())) fail(ErrorKind::Membership, g.str() + " is not in Gamma_0(" + std::to_string(ctx.N()) + ")");
  if (x.is_infinity()) fail(ErrorKind::InvalidArgument, "h is evaluated at finite cusps only");
  Cyclotomic here = shat(ctx, x);
  Cusp gx = cusp_apply(g, x);
  if (gx.is_infinity()) return here;
  Rational j = cocycle_j(g, x);
  return here - shat(ctx, gx) * pow(j, ctx.k() - 2);
}

namespace {

// Cusps p/q with p = 1 mod N and N | q, cheapest first: the cost of one
// evaluation is roughly q + |Cp + Dq|.
std::vector<Cusp> interpolation_nodes(i64 N, const Mat2& g, std::size_t count) {
  std::set<std::tuple<__int128, i64, i64>> best;
  const int spread = static_cast<int>(count) + 1;
  for (i64 m = 1;; ++m) {
    i64 q = checked_mul(m, N);
    if (best.size() >= count && static_cast<__int128>(q) > std::get<0>(*std::next(best.begin(), static_cast<long>(count - 1))))
      break;
    i64 t0 = 0;
    if (g.c != 0) {
      __int128 num = -static_cast<__int128>(g.d) * q - g.c;
      __int128 den = static_cast<__int128>(g.c) * N;
      if (den < 0) {
        num = -num;
        den = -den;
      }
      __int128 fl = num / den;
      if (num % den != 0 && num < 0) --fl;
      t0 = static_cast<i64>(fl);
    }
    for (i64 t = t0 - spread; t <= t0 + spread; ++t) {
      i64 p = checked_add(1, checked_mul(N, t));
      if (std::gcd(p, q) != 1) continue;
      __int128 v = static_cast<__int128>(g.c) * p + static_cast<__int128>(g.d) * q;
      if (v == 0) continue;
      best.emplace(q + (v < 0 ? -v : v), q, p);
    }
  }
  std::vector<Cusp> out;
  for (const auto& [score, q, p] : best) {
    out.emplace_back(p, q);
    if (out.size() == count) break;
  }
  return out;
}

}  // namespace

Interpolation h_interpolate_full(const SumContext& ctx, const Mat2& g) {
  if (!in_gamma0(g, ctx.N())) fail(ErrorKind::Membership, g.str() + " is not in Gamma_0(" + std::to_string(ctx.N()) + ")");
  Cyclotomic psi = ctx.psi(g);
  if (!(psi == Cyclotomic(Rational(1))))
    fail(ErrorKind::InvalidArgument, "psi(" + g.str() + ") = " + psi.str() + " is not 1, so h is not a polynomial");
  const std::size_t k = static_cast<std::size_t>(ctx.k());
  auto nodes = interpolation_nodes(ctx.N(), g, k);
  if (nodes.size() < k) fail(ErrorKind::Numeric, "not enough interpolation nodes");
  std::vector<Rational> xs;
  std::vector<Cyclotomic> ys;
  for (const auto& x : nodes) {
    xs.push_back(x.value());
    ys.push_back(h_eval(ctx, g, x));
  }
  // Newton divided differences on the first k-1 nodes
  const std::size_t n = k - 1;
  std::vector<Cyclotomic> dd(ys.begin(), ys.begin() + static_cast<long>(n));
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  CyclotomicPoly poly = CyclotomicPoly::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    CyclotomicPoly lin(std::vector<Cyclotomic>{Cyclotomic(-xs[i]), Cyclotomic(Rational(1))});
    poly = poly * lin + CyclotomicPoly::constant(dd[i]);
  }
  Cyclotomic check = poly.eval(xs[n]);
  if (!(check == ys[n]))
    fail(ErrorKind::Consistency, "interpolated h disagrees with the held-out value at " + nodes[n].str() + ": " + check.str() +
                                     " vs " + ys[n].str());
  return {poly, nodes};
}

CyclotomicPoly h_interpolate(const SumContext& ctx, const Mat2& g) { return h_interpolate_full(ctx, g).poly; }

RationalPoly h_interpolate_rational(const SumContext& ctx, const Mat2& g) { return rational_part(h_interpolate(ctx, g)); }

}  // namespace gds
