#include <doctest.h>

#include <numeric>
#include <random>

#include "gds/characters.hpp"
#include "gds/error.hpp"

using namespace gds;

namespace {

long phi(long q) {
  long n = 0;
  for (long a = 1; a <= q; ++a) n += std::gcd(a, q) == 1;
  return n;
}

int legendre(long n, long p) {
  n %= p;
  if (n < 0) n += p;
  if (n == 0) return 0;
  long r = 1;
  for (long e = 0; e < (p - 1) / 2; ++e) r = r * n % p;
  return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("enumeration sizes and primitive quadratic counts") {
  CHECK(characters_mod(5).size() == 4);
  CHECK(characters_mod(8).size() == 4);
  CHECK(characters_mod(1).size() == 1);
  CHECK(characters_mod(1)[0].is_trivial());
  auto count_pq = [](long q) {
    int n = 0;
    for (const auto& c : characters_mod(q)) n += c.is_primitive() && c.is_quadratic();
    return n;
  };
  CHECK(count_pq(5) == 1);
  CHECK(count_pq(8) == 2);
  for (long q = 1; q <= 40; ++q) CHECK(static_cast<long>(characters_mod(q).size()) == phi(q));
}

TEST_CASE("values of the named characters") {
  CHECK(named_character("chi4").value(3) == Cyclotomic(Rational(-1)));
  CHECK(named_character("chi7").value(3) == Cyclotomic(Rational(-1)));
  CHECK(named_character("chi8b").real_value(7) == -1);
  CHECK(named_character("chi8a").real_value(7) == 1);
  for (long n = -20; n <= 20; ++n) {
    CHECK(named_character("chi5").real_value(n) == legendre(n, 5));
    CHECK(named_character("chi3").real_value(n) == legendre(n, 3));
    CHECK(named_character("chi7").real_value(n) == legendre(n, 7));
  }
  for (const char* tag : {"chi3", "chi4", "chi5", "chi7", "chi8a", "chi8b"}) {
    auto chi = named_character(tag);
    CHECK(chi.value(chi.modulus()).is_zero());
    CHECK(chi.label() == tag);
    CHECK(parse_character(tag) == chi);
  }
  CHECK_THROWS_AS(named_character("chi9"), Error);
  CHECK_THROWS_AS(parse_character("5:4"), Error);
}

TEST_CASE("conductor, primitivity, parity") {
  auto chi3 = named_character("chi3");
  CHECK(chi3.conductor() == 3);
  CHECK(chi3.is_primitive());
  CHECK(chi3.parity() == -1);
  CHECK(chi3.is_quadratic());
  auto triv6 = characters_mod(6)[0];
  CHECK(triv6.is_trivial());
  CHECK(triv6.conductor() == 1);
  CHECK_FALSE(triv6.is_primitive());
  CHECK(named_character("chi8a").parity() == 1);
  CHECK(named_character("chi4").parity() == -1);
  CHECK(named_character("chi5").parity() == 1);
}

TEST_CASE("square of a quadratic character is trivial") {
  auto chi = named_character("chi3");
  for (long n = 0; n < 9; ++n) {
    Cyclotomic sq = chi.value(n) * chi.value(n);
    CHECK(sq == Cyclotomic(Rational(std::gcd(n, 3L) == 1 ? 1 : 0)));
  }
}

TEST_CASE("multiplicativity, support and orthogonality for q <= 32") {
  for (long q = 1; q <= 32; ++q) {
    auto chars = characters_mod(q);
    for (const auto& chi : chars) {
      for (long m = 0; m < q; ++m) {
        CHECK(chi.value(m).is_zero() == (std::gcd(m, q) != 1));
        for (long n = 0; n < q; ++n)
          if (std::gcd(m * n, q) == 1) CHECK(chi.value(m * n) == chi.value(m) * chi.value(n));
      }
      CHECK(chi.parity() * chi.parity() == 1);
    }
    for (long n = 0; n < q; ++n) {
      Cyclotomic s;
      for (const auto& chi : chars) s += chi.value(n);
      CHECK(s == Cyclotomic(Rational(n % q == 1 % q ? phi(q) : 0)));
    }
  }
}

TEST_CASE("Gauss sums") {
  CHECK(gauss_sum(named_character("chi4")) == Cyclotomic::zeta(4) * Rational(2));
  CHECK(gauss_sum(named_character("chi3")) == Cyclotomic::zeta(3) - Cyclotomic::zeta(3, 2));
  for (long q = 3; q <= 32; ++q)
    for (const auto& chi : primitive_characters(q)) {
      CHECK(gauss_sum(chi) * gauss_sum(chi.conj()) == Cyclotomic(Rational(chi.parity() * q)));
      CHECK(std::abs(std::norm(gauss_sum(chi).to_complex()) - static_cast<double>(chi.conductor())) < 1e-10);
    }
}

TEST_CASE("central character") {
  auto chi3 = named_character("chi3"), chi4 = named_character("chi4");
  CHECK(central_character(chi3, chi4, Mat2(1, 0, 12, 1)) == Cyclotomic(Rational(1)));
  CHECK(central_character(chi3, chi4, Mat2(5, 1, 24, 5)) == Cyclotomic(Rational(-1)));
  CHECK_THROWS_AS(central_character(chi3, chi4, Mat2(1, 0, 5, 1)), Error);
  auto chi = parse_character("5:1");
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    i64 c = 25 * std::uniform_int_distribution<i64>(1, 6)(rng), d;
    do d = std::uniform_int_distribution<i64>(-c, c)(rng);
    while (std::gcd(d, c) != 1);
    i64 a = 1;
    while ((a * d - 1) % c != 0) ++a;
    Mat2 g(a, (a * d - 1) / c, c, d);
    CHECK(central_character(chi, chi, g) == Cyclotomic(Rational(1)));
    Mat2 h = g * Mat2(1, 3, 0, 1) * g;
    auto chi2 = parse_character("5:3");
    CHECK(central_character(chi, chi2, g * h) == central_character(chi, chi2, g) * central_character(chi, chi2, h));
  }
}

TEST_CASE("q:index labels round trip") {
  for (long q = 3; q <= 20; ++q)
    for (const auto& chi : characters_mod(q)) {
      std::string spec = std::to_string(q) + ":" + std::to_string(chi.index());
      CHECK(parse_character(spec) == chi);
    }
  nlohmann::json j = named_character("chi8b");
  CHECK(j["modulus"] == 8);
  CHECK(j["exponents"].size() == 2);
}
