#include "gds/exactnum.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "gds/error.hpp"

namespace gds {

Integer integer_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::InvalidArgument, "not a rational: " + s);
  }
}

Integer Rational::floor() const {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_str();
}

std::string Rational::fraction_str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorKind::InvalidArgument, "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& x, int e) {
  if (e < 0) return pow(Rational(1) / x, -e);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), x.raw().get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), x.raw().get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

bool in_multiples(const Rational& x, const Rational& r) {
  if (r.is_zero()) return x.is_zero();
  return (x / r).is_integer();
}

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return abs(b);
  if (b.is_zero()) return abs(a);
  // gcd(p/q, r/s) = gcd(ps, rq) / (qs), reduced by the constructor
  Integer n = gcd(a.num() * b.den(), b.num() * a.den());
  return Rational(n, a.den() * b.den());
}

Rational rational_gcd_set(const std::vector<Rational>& values) {
  if (values.empty()) fail(ErrorKind::InvalidArgument, "rational_gcd_set of an empty set");
  Rational g;
  for (const auto& v : values) g = rational_gcd(g, v);
  return g;
}

unsigned euler_phi(unsigned m) {
  unsigned r = m;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }

namespace {

std::vector<std::int64_t> poly_divide_exact(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  // both ascending, den monic
  std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    std::int64_t t = num[i];
    q[i - dn] = t;
    if (!t) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= t * den[j];
  }
  return q;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<std::int64_t>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  if (m == 0) fail(ErrorKind::InvalidArgument, "cyclotomic order 0");
  std::vector<std::int64_t> p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) p = poly_divide_exact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, p);
  return p;
}

namespace {

void reduce_mod_phi(std::vector<Integer>& v, unsigned m) {
  auto phi = cyclotomic_polynomial(m);
  std::size_t d = phi.size() - 1;
  for (std::size_t i = v.size(); i-- > d;) {
    if (v[i] == 0) continue;
    Integer t = v[i];
    for (std::size_t j = 0; j < d; ++j)
      if (phi[j]) v[i - d + j] -= t * static_cast<long>(phi[j]);
    v[i] = 0;
  }
  v.resize(d);
}

}  // namespace

Cyclotomic::Cyclotomic(const Rational& r, unsigned order) : m_(order), num_(euler_phi(order)), den_(r.den()) {
  num_[0] = r.num();
}

Cyclotomic Cyclotomic::zeta(unsigned m, long long power) {
  long long e = ((power % m) + m) % m;
  std::vector<Integer> s(static_cast<std::size_t>(e) + 1);
  s[static_cast<std::size_t>(e)] = 1;
  return from_exponent_sums(m, std::move(s));
}

Cyclotomic Cyclotomic::from_exponent_sums(unsigned m, std::vector<Integer> sums, const Integer& den) {
  if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  Cyclotomic x;
  x.m_ = m;
  // fold exponents modulo m first so reduction only sees degree < m
  if (sums.size() > m) {
    for (std::size_t i = m; i < sums.size(); ++i) sums[i % m] += sums[i];
    sums.resize(m);
  }
  if (sums.size() < euler_phi(m)) sums.resize(euler_phi(m));
  reduce_mod_phi(sums, m);
  x.num_ = std::move(sums);
  x.den_ = den;
  x.normalize();
  return x;
}

Cyclotomic Cyclotomic::from_coefficients(unsigned m, const std::vector<Rational>& coeffs) {
  Integer den = 1;
  for (const auto& c : coeffs) den = lcm(den, c.den());
  std::vector<Integer> s(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) s[i] = coeffs[i].num() * (den / coeffs[i].den());
  return from_exponent_sums(m, std::move(s), den);
}

void Cyclotomic::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  Integer g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    if (c != 0) g = gcd(g, c);
  }
  if (g != 1) {
    for (auto& c : num_) c /= g;
    den_ /= g;
  }
  if (is_zero()) den_ = 1;
}

Rational Cyclotomic::coeff(std::size_t i) const {
  if (i >= num_.size()) return Rational();
  return Rational(num_[i], den_);
}

std::vector<Rational> Cyclotomic::coefficients() const {
  std::vector<Rational> r;
  for (std::size_t i = 0; i < num_.size(); ++i) r.push_back(coeff(i));
  return r;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : num_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) fail(ErrorKind::InvalidArgument, "cyclotomic value is not rational: " + str());
  return coeff(0);
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<Integer> s(m_);
  for (std::size_t i = 0; i < num_.size(); ++i) s[(m_ - i) % m_] += num_[i];
  return from_exponent_sums(m_, std::move(s), den_);
}

Cyclotomic Cyclotomic::embed_order(unsigned m) const {
  if (m == 0 || m % m_) fail(ErrorKind::InvalidArgument, "embed_order target is not a multiple of the order");
  if (m == m_) return *this;
  unsigned step = m / m_;
  std::vector<Integer> s(m);
  for (std::size_t i = 0; i < num_.size(); ++i) s[i * step] = num_[i];
  return from_exponent_sums(m, std::move(s), den_);
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    double c = mpq_class(num_[i], den_).get_d();
    double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m_);
    z += c * std::complex<double>(std::cos(t), std::sin(t));
  }
  return z;
}

std::string Cyclotomic::str() const {
  if (is_rational()) return coeff(0).str();
  std::string out;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    Rational c = coeff(i);
    std::string term;
    if (i == 0) {
      term = abs(c).str();
    } else {
      std::string z = "z" + std::to_string(m_) + (i > 1 ? "^" + std::to_string(i) : "");
      term = abs(c) == Rational(1) ? z : abs(c).str() + "*" + z;
    }
    if (out.empty())
      out = (c.sign() < 0 ? "-" : "") + term;
    else
      out += (c.sign() < 0 ? " - " : " + ") + term;
  }
  return out;
}

void Cyclotomic::align_with(Cyclotomic& o) {
  if (m_ == o.m_) return;
  unsigned l = std::lcm(m_, o.m_);
  if (m_ != l) *this = embed_order(l);
  if (o.m_ != l) o = o.embed_order(l);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  Cyclotomic o = other;
  align_with(o);
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) {
  Cyclotomic o = other;
  align_with(o);
  std::vector<Integer> prod(num_.size() + o.num_.size() - 1);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < o.num_.size(); ++j)
      if (o.num_[j] != 0) prod[i + j] += num_[i] * o.num_[j];
  }
  *this = from_exponent_sums(m_, std::move(prod), den_ * o.den_);
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  for (auto& c : num_) c *= r.num();
  den_ *= r.den();
  normalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Rational& r) {
  if (r.is_zero()) fail(ErrorKind::InvalidArgument, "division by zero");
  return *this *= Rational(1) / r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ == b.m_) return a.den_ == b.den_ && a.num_ == b.num_;
  Cyclotomic x = a, y = b;
  x.align_with(y);
  return x.den_ == y.den_ && x.num_ == y.num_;
}

Cyclotomic cyclotomic_arith(const Cyclotomic& x, const Cyclotomic& y, CycOp op) {
  switch (op) {
    case CycOp::Conj: return x.conj();
    case CycOp::Neg: return -x;
    default: break;
  }
  if (x.order() != y.order())
    fail(ErrorKind::InvalidArgument, "cyclotomic orders differ (" + std::to_string(x.order()) + " vs " +
                                         std::to_string(y.order()) + "); lift with embed_order first");
  return op == CycOp::Add ? x + y : x * y;
}

void to_json(nlohmann::json& j, const Rational& r) { j = r.fraction_str(); }

void from_json(const nlohmann::json& j, Rational& r) {
  if (j.is_number_integer())
    r = Rational(j.get<long long>());
  else
    r = Rational::parse(j.get<std::string>());
}

void to_json(nlohmann::json& j, const Cyclotomic& x) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : x.coefficients()) coeffs.push_back(c.fraction_str());
  j = nlohmann::json{{"order", x.order()}, {"coefficients", coeffs}};
}

void from_json(const nlohmann::json& j, Cyclotomic& x) {
  std::vector<Rational> cs;
  for (const auto& c : j.at("coefficients")) cs.push_back(c.get<Rational>());
  x = Cyclotomic::from_coefficients(j.at("order").get<unsigned>(), cs);
}

}  // namespace gds
