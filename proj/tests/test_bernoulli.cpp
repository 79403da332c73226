#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gds/bernoulli.hpp"
#include "gds/error.hpp"

using namespace gds;

namespace {
Rational q(long p, long d) { return Rational(Integer(p), Integer(d)); }
}  // namespace

TEST_CASE("Bernoulli numbers and polynomials") {
  CHECK(bernoulli_number(1) == q(-1, 2));
  CHECK(bernoulli_number(2) == q(1, 6));
  CHECK(bernoulli_number(12) == q(-691, 2730));
  for (int n = 3; n < 30; n += 2) CHECK(bernoulli_number(n).is_zero());
  CHECK(bernoulli_poly(2, q(1, 2)) == q(-1, 12));
  CHECK(bernoulli_poly(1, q(1, 2)) == Rational(0));
  CHECK(bernoulli_poly(0, q(17, 3)) == Rational(1));
}

TEST_CASE("periodic Bernoulli") {
  CHECK(periodic_bernoulli(1, q(1, 3)) == q(-1, 6));
  CHECK(periodic_bernoulli(2, Rational(7)) == Rational(0));
  CHECK(periodic_bernoulli(1, q(-2, 3)) == q(-1, 6));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-300, 300), den(1, 40);
  for (int t = 0; t < 300; ++t) {
    int k = 1 + t % 8;
    Rational x = q(num(rng), den(rng));
    CHECK(periodic_bernoulli(k, x + Rational(1)) == periodic_bernoulli(k, x));
    if (!x.is_integer()) {
      CHECK(periodic_bernoulli(k, -x) == Rational(k % 2 ? -1 : 1) * periodic_bernoulli(k, x));
      double bound = std::numbers::pi * std::numbers::pi / 3 * std::tgamma(k + 1) / std::pow(2 * std::numbers::pi, k);
      CHECK(std::abs(periodic_bernoulli(k, x).to_double()) <= bound);
    }
  }
}

TEST_CASE("Worpitzky double sum agrees with the periodic Bernoulli function") {
  CHECK(worpitzky_eval(1, q(1, 3)) == q(-1, 6));
  CHECK(worpitzky_eval(2, q(1, 2)) == q(-1, 12));
  CHECK_THROWS_AS(worpitzky_eval(3, Rational(2)), Error);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> num(-500, 500), den(2, 60);
  int n = 0;
  while (n < 500) {
    Rational x = q(num(rng), den(rng));
    if (x.is_integer()) continue;
    int k = 1 + n % 8;
    CHECK(worpitzky_eval(k, x) == periodic_bernoulli(k, x));
    ++n;
  }
}

TEST_CASE("character Bernoulli values") {
  auto chi3 = named_character("chi3");
  CHECK(char_bernoulli(1, chi3, Rational(0)) == Cyclotomic(q(-1, 3)));
  for (const char* tag : {"chi5", "chi8a"}) CHECK(char_bernoulli(1, named_character(tag), Rational(0)).is_zero());
  // Fourier side: -k! q^{k-1} tau(conj chi) / (2 pi i)^k * sum_{m != 0} chi(m) m^{-k} e(m x / q)
  auto chi4 = named_character("chi4");
  for (Rational x : {Rational(0), q(1, 3), q(-5, 7)}) {
    const int k = 2;
    const double xd = x.to_double();
    std::complex<double> series = 0;
    for (long m = 1; m < 200000; ++m) {
      double t = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
      double arg = 2 * std::numbers::pi * static_cast<double>(m) * xd / 4;
      series += chi4.cvalue(m) * t * std::polar(1.0, arg) + chi4.cvalue(-m) * t * std::polar(1.0, -arg);
    }
    std::complex<double> tau = gauss_sum(chi4.conj()).to_complex();
    std::complex<double> two_pi_i(0, 2 * std::numbers::pi);
    std::complex<double> expected = -2.0 * 4.0 * tau / (two_pi_i * two_pi_i) * series;
    CHECK(std::abs(char_bernoulli(k, chi4, x).to_complex() - expected) < 1e-8);
  }
}

TEST_CASE("denominator lcm clears Bernoulli denominators") {
  for (int k = 0; k <= 12; ++k) {
    Integer D = bernoulli_denominator_lcm(k);
    for (int i = 0; i <= k; ++i) CHECK((bernoulli_number(i) * Rational(D)).is_integer());
  }
}
