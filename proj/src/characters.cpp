#include "gds/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "gds/error.hpp"

namespace gds {

namespace {

long multiplicative_order(long g, long m) {
  long x = g % m, k = 1;
  while (x != 1) {
    x = static_cast<long>(static_cast<long long>(x) * g % m);
    ++k;
  }
  return k;
}

}  // namespace

std::vector<CyclicFactor> unit_group_factors(long q) {
  if (q < 1) fail(ErrorKind::InvalidArgument, "modulus must be positive");
  std::vector<CyclicFactor> out;
  long m = q;
  for (long p = 2; p <= m; ++p) {
    if (p * p > m) p = m;
    if (m % p) continue;
    long pe = 1;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      pe *= p;
      ++e;
    }
    if (p == 2) {
      if (e >= 2) out.push_back({2, pe, pe - 1, 2});
      if (e >= 3) out.push_back({2, pe, 5, pe / 4});
      continue;
    }
    long phi = pe / p * (p - 1);
    long g = 2;
    while (std::gcd(g, pe) != 1 || multiplicative_order(g, pe) != phi) ++g;
    out.push_back({p, pe, g, phi});
  }
  return out;
}

DirichletCharacter::DirichletCharacter(long q, std::vector<long> exponents)
    : q_(q), factors_(unit_group_factors(q)), exps_(std::move(exponents)) {
  if (exps_.size() != factors_.size())
    fail(ErrorKind::InvalidArgument, "exponent vector length does not match the unit group of " + std::to_string(q));
  long L = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    exps_[i] = ((exps_[i] % factors_[i].order) + factors_[i].order) % factors_[i].order;
    L = std::lcm(L, factors_[i].order);
  }
  // discrete logarithms per factor; the two 2-power factors share a modulus
  std::vector<std::vector<long>> dlog(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    dlog[i].assign(static_cast<std::size_t>(f.prime_power), -1);
    if (f.prime == 2) continue;
    long x = 1;
    for (long t = 0; t < f.order; ++t) {
      dlog[i][static_cast<std::size_t>(x)] = t;
      x = static_cast<long>(static_cast<long long>(x) * f.generator % f.prime_power);
    }
  }
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.prime != 2) continue;
    long pe = f.prime_power;
    bool has_five = i + 1 < factors_.size() && factors_[i + 1].prime == 2;
    long five_order = has_five ? factors_[i + 1].order : 1;
    if (has_five) dlog[i + 1].assign(static_cast<std::size_t>(pe), -1);
    for (long s = 0; s < 2; ++s) {
      long x = s ? pe - 1 : 1;
      for (long t = 0; t < five_order; ++t) {
        dlog[i][static_cast<std::size_t>(x)] = s;
        if (has_five) dlog[i + 1][static_cast<std::size_t>(x)] = t;
        x = static_cast<long>(static_cast<long long>(x) * 5 % pe);
      }
    }
    break;
  }
  long g = L;
  std::vector<long> weight(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    weight[i] = exps_[i] * (L / factors_[i].order);
    g = std::gcd(g, weight[i]);
  }
  order_ = static_cast<unsigned>(L / g);
  table_.assign(static_cast<std::size_t>(q), -1);
  for (long n = 0; n < q; ++n) {
    if (std::gcd(n, q) != 1) continue;
    long long e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      long r = n % factors_[i].prime_power;
      e += static_cast<long long>(weight[i]) * dlog[i][static_cast<std::size_t>(r)];
    }
    e %= L;
    table_[static_cast<std::size_t>(n)] = static_cast<int>(e / (L / static_cast<long>(order_)));
  }
  if (q == 1) table_[0] = 0;
}

long DirichletCharacter::index() const {
  long idx = 0, radix = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    idx += exps_[i] * radix;
    radix *= factors_[i].order;
  }
  return idx;
}

int DirichletCharacter::exponent(long long n) const {
  long long r = n % q_;
  if (r < 0) r += q_;
  return table_[static_cast<std::size_t>(r)];
}

Cyclotomic DirichletCharacter::value(long long n) const {
  int e = exponent(n);
  if (e < 0) return Cyclotomic(Rational(0), order_);
  return Cyclotomic::zeta(order_, e);
}

std::complex<double> DirichletCharacter::cvalue(long long n) const {
  int e = exponent(n);
  if (e < 0) return 0.0;
  if (e == 0) return 1.0;
  if (2 * e == static_cast<int>(order_)) return -1.0;
  double t = 2.0 * std::numbers::pi * e / order_;
  return {std::cos(t), std::sin(t)};
}

int DirichletCharacter::real_value(long long n) const {
  if (order_ > 2) fail(ErrorKind::InvalidArgument, "character " + label() + " is not real");
  int e = exponent(n);
  return e < 0 ? 0 : (e == 0 ? 1 : -1);
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<long> e = exps_;
  for (auto& x : e) x = -x;
  return DirichletCharacter(q_, e);
}

long DirichletCharacter::conductor() const {
  for (long d = 1; d <= q_; ++d) {
    if (q_ % d) continue;
    bool ok = true;
    for (long n = 1; n < q_ && ok; n += d)
      if (std::gcd(n, q_) == 1 && exponent(n) != 0) ok = false;
    if (ok) return d;
  }
  return q_;
}

int DirichletCharacter::parity() const {
  int e = exponent(-1);
  return e == 0 ? 1 : -1;
}

namespace {

struct NamedSpec {
  const char* tag;
  long q;
  int at3, at5, at7;
};

const NamedSpec kNamed[] = {
    {"chi3", 3, 0, 0, 0}, {"chi4", 4, 0, 0, 0}, {"chi5", 5, 0, 0, 0},
    {"chi7", 7, 0, 0, 0}, {"chi8a", 8, -1, -1, 1}, {"chi8b", 8, 1, -1, -1},
};

bool matches(const DirichletCharacter& chi, const NamedSpec& s) {
  if (chi.modulus() != s.q || !chi.is_quadratic() || !chi.is_primitive()) return false;
  if (s.q != 8) return true;
  return chi.real_value(3) == s.at3 && chi.real_value(5) == s.at5 && chi.real_value(7) == s.at7;
}

}  // namespace

std::string DirichletCharacter::label() const {
  for (const auto& s : kNamed)
    if (matches(*this, s)) return s.tag;
  return std::to_string(q_) + ":" + std::to_string(index());
}

std::vector<DirichletCharacter> characters_mod(long q) {
  auto factors = unit_group_factors(q);
  long total = 1;
  for (const auto& f : factors) total *= f.order;
  std::vector<DirichletCharacter> out;
  for (long idx = 0; idx < total; ++idx) {
    std::vector<long> e(factors.size());
    long r = idx;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      e[i] = r % factors[i].order;
      r /= factors[i].order;
    }
    out.emplace_back(q, e);
  }
  return out;
}

std::vector<DirichletCharacter> primitive_characters(long q) {
  std::vector<DirichletCharacter> out;
  for (auto& chi : characters_mod(q))
    if (chi.is_primitive() && !chi.is_trivial()) out.push_back(chi);
  return out;
}

DirichletCharacter named_character(std::string_view tag) {
  for (const auto& s : kNamed) {
    if (tag != s.tag) continue;
    for (auto& chi : characters_mod(s.q))
      if (matches(chi, s)) return chi;
  }
  fail(ErrorKind::UnknownCharacter, "unknown character tag: " + std::string(tag));
}

DirichletCharacter parse_character(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) return named_character(spec);
  long q = 0, idx = 0;
  try {
    q = std::stol(std::string(spec.substr(0, colon)));
    idx = std::stol(std::string(spec.substr(colon + 1)));
  } catch (const std::exception&) {
    fail(ErrorKind::UnknownCharacter, "bad character spec: " + std::string(spec));
  }
  if (q < 1 || idx < 0) fail(ErrorKind::UnknownCharacter, "bad character spec: " + std::string(spec));
  auto all = characters_mod(q);
  if (idx >= static_cast<long>(all.size()))
    fail(ErrorKind::UnknownCharacter, "character index out of range: " + std::string(spec));
  return all[static_cast<std::size_t>(idx)];
}

Cyclotomic gauss_sum(const DirichletCharacter& chi) {
  long q = chi.modulus();
  unsigned L = std::lcm(chi.order(), static_cast<unsigned>(q));
  std::vector<Integer> s(L);
  for (long n = 0; n < q; ++n) {
    int e = chi.exponent(n);
    if (e < 0) continue;
    std::size_t idx = (static_cast<std::size_t>(e) * (L / chi.order()) + static_cast<std::size_t>(n) * (L / q)) % L;
    s[idx] += 1;
  }
  return Cyclotomic::from_exponent_sums(L, std::move(s));
}

Cyclotomic central_character(const DirichletCharacter& chi1, const DirichletCharacter& chi2, const Mat2& g) {
  i64 N = chi1.modulus() * chi2.modulus();
  if (!in_gamma0(g, N)) fail(ErrorKind::Membership, g.str() + " is not in Gamma_0(" + std::to_string(N) + ")");
  return chi1.value(g.d) * chi2.value(g.d).conj();
}

void to_json(nlohmann::json& j, const DirichletCharacter& chi) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& f : chi.factors()) gens.push_back({{"modulus", f.prime_power}, {"generator", f.generator}, {"order", f.order}});
  j = nlohmann::json{{"modulus", chi.modulus()}, {"generators", gens}, {"exponents", chi.exponents()}, {"label", chi.label()}};
}

}  // namespace gds
