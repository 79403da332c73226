#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gds/error.hpp"
#include "gds/exactnum.hpp"

namespace gds {

using i64 = std::int64_t;

i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);
i64 floor_div(i64 a, i64 b);
i64 mod_floor(i64 a, i64 m);
i64 gcd_i64(i64 a, i64 b);
// inverse of a modulo m in [0, m); m >= 1
i64 inverse_mod(i64 a, i64 m);

struct Mat2 {
  i64 a = 1, b = 0, c = 0, d = 1;

  Mat2() = default;
  Mat2(i64 a_, i64 b_, i64 c_, i64 d_);

  static Mat2 identity() { return {}; }
  static Mat2 S() { return {0, -1, 1, 0}; }
  static Mat2 T(i64 n = 1) { return {1, n, 0, 1}; }
  static Mat2 parse(std::string_view text);

  Mat2 inverse() const { return Mat2(d, -b, -c, a); }
  Mat2 operator-() const { return Mat2(-a, -b, -c, -d); }
  std::string str() const;

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y) = default;
  friend auto operator<=>(const Mat2& x, const Mat2& y) = default;
};

bool in_gamma0(const Mat2& g, i64 N);
bool in_gamma1(const Mat2& g, i64 N);

// Reduced point p/q of P^1(Q) with q >= 0; infinity is stored as 1/0.
struct Cusp {
  i64 p = 1, q = 0;

  Cusp() = default;
  Cusp(i64 p_, i64 q_);
  static Cusp infinity() { return {}; }
  static Cusp from_rational(const Rational& x);
  static Cusp parse(std::string_view text);

  bool is_infinity() const { return q == 0; }
  Rational value() const;
  double to_double() const { return static_cast<double>(p) / static_cast<double>(q); }
  std::string str() const;

  friend bool operator==(const Cusp& x, const Cusp& y) = default;
  friend auto operator<=>(const Cusp& x, const Cusp& y) = default;
};

Cusp cusp_apply(const Mat2& g, const Cusp& x);
// c*x + d; throws at the pole x = g^{-1} infinity
Rational cocycle_j(const Mat2& g, const Cusp& x);

// Polynomial with ascending coefficients c[i] of x^i.  Coefficient a_n of the
// weight layout sum_n a_n x^{k-n-2} is coeff(k-2-n).
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly monomial(const T& v, std::size_t power) {
    std::vector<T> c(power + 1);
    c[power] = v;
    return Poly(std::move(c));
  }

  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(); }
  // coefficient a_n of x^{k-n-2}
  T weight_coeff(int k, int n) const { return coeff(static_cast<std::size_t>(k - n - 2)); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  template <class X>
  auto eval(const X& x) const {
    using R = decltype(T() * x);
    R acc = R();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return Poly();
    std::vector<T> r(x.c_.size() + y.c_.size() - 1);
    for (std::size_t i = 0; i < x.c_.size(); ++i)
      for (std::size_t j = 0; j < y.c_.size(); ++j) r[i + j] += x.c_[i] * y.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& x, const T& s) {
    std::vector<T> r = x.c_;
    for (auto& v : r) v = v * s;
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }

  // coefficients printed from the top degree down in the variable `var`
  std::string str(const std::string& var = "a") const;

 private:
  std::vector<T> c_;
  void trim() {
    while (!c_.empty() && is_zero_value(c_.back())) c_.pop_back();
  }
  static bool is_zero_value(const T& v) { return v == T(); }
};

template <>
std::string Poly<Rational>::str(const std::string& var) const;
template <>
std::string Poly<Cyclotomic>::str(const std::string& var) const;

using RationalPoly = Poly<Rational>;
using CyclotomicPoly = Poly<Cyclotomic>;

// (cx+d)^{k-2} P((ax+b)/(cx+d))
template <class T>
Poly<T> slash_poly(const Poly<T>& P, const Mat2& g, int k) {
  if (P.degree() > k - 2) fail(ErrorKind::InvalidArgument, "polynomial degree exceeds k-2");
  Poly<T> num(std::vector<T>{T(Rational(g.b)), T(Rational(g.a))});
  Poly<T> den(std::vector<T>{T(Rational(g.d)), T(Rational(g.c))});
  Poly<T> out;
  for (int i = 0; i <= P.degree(); ++i) {
    Poly<T> term = Poly<T>::constant(P.coeff(static_cast<std::size_t>(i)));
    for (int e = 0; e < i; ++e) term = term * num;
    for (int e = 0; e < k - 2 - i; ++e) term = term * den;
    out += term;
  }
  return out;
}

RationalPoly rational_part(const CyclotomicPoly& P);
CyclotomicPoly to_cyclotomic(const RationalPoly& P);

// Matrices of Gamma_1(N) with 1 <= a < jN and N <= c < jN, one witness per (a, c).
std::vector<Mat2> enumerate_G(i64 N, i64 j);

enum class Letter { S, T, Tinv };
std::vector<Letter> sl2z_word(const Mat2& g);
Mat2 letter_matrix(Letter l);

// Right cosets of Gamma_1(N) in SL_2(Z), keyed by the bottom row mod N.
class Gamma1Cosets {
 public:
  Gamma1Cosets(i64 N, std::vector<Letter> moves = {Letter::S, Letter::T});

  i64 level() const { return N_; }
  std::size_t coset_count() const { return reps_.size(); }
  const std::vector<Mat2>& generators() const { return gens_; }
  const std::vector<Letter>& moves() const { return moves_; }

  // A factorization of g in Gamma_1(N) into generators: pairs (index, +1/-1).
  std::vector<std::pair<std::size_t, int>> rewrite(const Mat2& g) const;

 private:
  i64 N_;
  std::vector<Letter> moves_;
  std::vector<Mat2> reps_;
  std::map<std::pair<i64, i64>, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> schreier_;  // (coset, move) -> generator
  std::vector<Mat2> gens_;

  std::size_t coset_of(const Mat2& g) const;
  std::pair<i64, i64> key(const Mat2& g) const;
};

std::vector<Mat2> gamma1_generators(i64 N, std::vector<Letter> moves = {Letter::S, Letter::T});
i64 gamma1_index(i64 N);

// Largest partial quotient a_1..a_n of the expansion with final quotient >= 2; 1 for integers.
i64 partial_quotient_max(const Rational& x);
i64 partial_quotient_max(i64 p, i64 q);

}  // namespace gds
