#include "gds/bernoulli.hpp"

#include <mutex>

#include "gds/error.hpp"

namespace gds {

namespace {

std::mutex cache_mutex;
std::vector<Rational> numbers{Rational(1)};
std::vector<std::vector<Rational>> polys;

Integer binom(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Akiyama-Tanigawa yields B_1 = +1/2; the sign is flipped afterwards
void extend_numbers(int n) {
  if (static_cast<int>(numbers.size()) > n) return;
  std::vector<Rational> a(static_cast<std::size_t>(n) + 1);
  std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    a[static_cast<std::size_t>(m)] = Rational(Integer(1), Integer(m + 1));
    for (int j = m; j >= 1; --j)
      a[static_cast<std::size_t>(j - 1)] = Rational(j) * (a[static_cast<std::size_t>(j - 1)] - a[static_cast<std::size_t>(j)]);
    out[static_cast<std::size_t>(m)] = a[0];
  }
  if (n >= 1) out[1] = Rational(Integer(-1), Integer(2));
  numbers = std::move(out);
}

}  // namespace

Rational bernoulli_number(int n) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "negative Bernoulli index");
  std::lock_guard lock(cache_mutex);
  extend_numbers(n);
  return numbers[static_cast<std::size_t>(n)];
}

const std::vector<Rational>& bernoulli_poly_coeffs(int k) {
  if (k < 0) fail(ErrorKind::InvalidArgument, "negative Bernoulli index");
  std::lock_guard lock(cache_mutex);
  extend_numbers(k);
  if (polys.size() <= static_cast<std::size_t>(k)) {
    // references handed out earlier must stay valid
    polys.reserve(256);
    if (static_cast<std::size_t>(k) >= polys.capacity()) fail(ErrorKind::InvalidArgument, "Bernoulli degree too large");
    while (polys.size() <= static_cast<std::size_t>(k)) {
      int d = static_cast<int>(polys.size());
      std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
      for (int j = 0; j <= d; ++j) c[static_cast<std::size_t>(d - j)] = Rational(binom(d, j)) * numbers[static_cast<std::size_t>(j)];
      polys.push_back(std::move(c));
    }
  }
  return polys[static_cast<std::size_t>(k)];
}

Rational bernoulli_poly(int k, const Rational& x) {
  const auto& c = bernoulli_poly_coeffs(k);
  Rational acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

Rational periodic_bernoulli(int k, const Rational& x) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "periodic Bernoulli needs k >= 1");
  if (x.is_integer()) return Rational();
  return bernoulli_poly(k, x - Rational(x.floor()));
}

Rational worpitzky_eval(int k, const Rational& x) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "k must be positive");
  if (x.is_integer()) fail(ErrorKind::InvalidArgument, "worpitzky_eval is undefined at integers");
  Rational t = x - Rational(x.floor());
  Rational total;
  for (int m = 0; m <= k; ++m) {
    Rational inner;
    for (int n = 0; n <= m; ++n) {
      Rational term = Rational(binom(m, n)) * pow(t + Rational(n), k);
      inner += (n % 2 ? -term : term);
    }
    total += inner / Rational(m + 1);
  }
  return total;
}

Cyclotomic char_bernoulli(int k, const DirichletCharacter& chi, const Rational& x) {
  long q = chi.modulus();
  auto cbar = chi.conj();
  unsigned m = cbar.order();
  Cyclotomic acc(Rational(), m);
  for (long n = 0; n < q; ++n) {
    if (cbar.exponent(n) < 0) continue;
    Rational b = periodic_bernoulli(k, (x + Rational(n)) / Rational(q));
    if (b.is_zero()) continue;
    acc += cbar.value(n) * b;
  }
  return acc * pow(Rational(q), k - 1);
}

Integer bernoulli_denominator_lcm(int k) {
  Integer L = 1;
  for (int i = 0; i <= k; ++i) {
    Integer d = bernoulli_number(i).den();
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d.get_mpz_t());
  }
  return L;
}

}  // namespace gds
