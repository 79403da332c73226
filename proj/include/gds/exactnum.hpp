#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gds {

using Integer = mpz_class;

Integer integer_from_i128(__int128 v);

class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}
  Rational(int v) : v_(static_cast<long>(v)) {}
  Rational(long long v) : v_(static_cast<long>(v)) {}
  Rational(const Integer& v) : v_(v) {}
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  Integer floor() const;

  // "p" for integers, "p/q" otherwise
  std::string str() const;
  // always "p/q"
  std::string fraction_str() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class v_;
};

Rational abs(const Rational& x);
Rational pow(const Rational& x, int e);
// x is an integer multiple of r (r = 0 only admits x = 0)
bool in_multiples(const Rational& x, const Rational& r);
// largest r >= 0 with every value in rZ; 0 when all values vanish
Rational rational_gcd_set(const std::vector<Rational>& values);
Rational rational_gcd(const Rational& a, const Rational& b);

std::vector<std::int64_t> cyclotomic_polynomial(unsigned m);
unsigned euler_phi(unsigned m);

// Element of Q(zeta_m) in the power basis modulo Phi_m, stored as integer
// numerators over one positive common denominator.
class Cyclotomic {
 public:
  Cyclotomic() : m_(1), num_(1), den_(1) {}
  Cyclotomic(const Rational& r, unsigned order = 1);
  Cyclotomic(long v) : Cyclotomic(Rational(v)) {}

  static Cyclotomic zeta(unsigned m, long long power = 1);
  // (sum_i sums[i] zeta_m^i) / den for an arbitrary-length exponent vector
  static Cyclotomic from_exponent_sums(unsigned m, std::vector<Integer> sums, const Integer& den = 1);
  static Cyclotomic from_coefficients(unsigned m, const std::vector<Rational>& coeffs);

  unsigned order() const { return m_; }
  std::size_t degree() const { return num_.size(); }
  Rational coeff(std::size_t i) const;
  std::vector<Rational> coefficients() const;

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;

  Cyclotomic conj() const;
  Cyclotomic embed_order(unsigned m) const;
  std::complex<double> to_complex() const;
  std::string str() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);
  Cyclotomic& operator/=(const Rational& r);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& b) { return a *= b; }
  friend Cyclotomic operator*(const Rational& b, Cyclotomic a) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Rational& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  unsigned m_;
  std::vector<Integer> num_;
  Integer den_;
  void normalize();
  void align_with(Cyclotomic& o);
};

enum class CycOp { Add, Mul, Conj, Neg };
// strict form: both operands must already share an order
Cyclotomic cyclotomic_arith(const Cyclotomic& x, const Cyclotomic& y, CycOp op);
unsigned lcm_order(unsigned a, unsigned b);

void to_json(nlohmann::json& j, const Rational& r);
void from_json(const nlohmann::json& j, Rational& r);
void to_json(nlohmann::json& j, const Cyclotomic& x);
void from_json(const nlohmann::json& j, Cyclotomic& x);

}  // namespace gds
