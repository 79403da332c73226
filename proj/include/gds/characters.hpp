#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "gds/exactnum.hpp"
#include "gds/modgroup.hpp"

namespace gds {

// One cyclic factor of (Z/qZ)^x: generated by `generator` modulo `prime_power`.
struct CyclicFactor {
  long prime;
  long prime_power;
  long generator;
  long order;
};

std::vector<CyclicFactor> unit_group_factors(long q);

class DirichletCharacter {
 public:
  DirichletCharacter(long q, std::vector<long> exponents);

  long modulus() const { return q_; }
  unsigned order() const { return order_; }
  const std::vector<CyclicFactor>& factors() const { return factors_; }
  const std::vector<long>& exponents() const { return exps_; }
  // position in the mixed-radix enumeration of characters_mod(q)
  long index() const;

  // chi(n) = zeta_order^e with e returned here, or -1 when gcd(n, q) > 1
  int exponent(long long n) const;
  Cyclotomic value(long long n) const;
  std::complex<double> cvalue(long long n) const;
  // -1, 0 or 1; only for characters of order <= 2
  int real_value(long long n) const;

  DirichletCharacter conj() const;
  long conductor() const;
  bool is_primitive() const { return conductor() == q_; }
  int parity() const;
  bool is_trivial() const { return order_ == 1; }
  bool is_quadratic() const { return order_ == 2; }

  // named tag for the six small quadratic characters, "q:index" otherwise
  std::string label() const;

  friend bool operator==(const DirichletCharacter& x, const DirichletCharacter& y) {
    return x.q_ == y.q_ && x.exps_ == y.exps_;
  }

 private:
  long q_;
  std::vector<CyclicFactor> factors_;
  std::vector<long> exps_;
  unsigned order_ = 1;
  std::vector<int> table_;
};

std::vector<DirichletCharacter> characters_mod(long q);
std::vector<DirichletCharacter> primitive_characters(long q);
DirichletCharacter named_character(std::string_view tag);
// accepts a named tag (chi3, chi4, chi5, chi7, chi8a, chi8b) or "q:index"
DirichletCharacter parse_character(std::string_view spec);

Cyclotomic gauss_sum(const DirichletCharacter& chi);
// psi(g) = chi1(d) * conj(chi2(d)); g must lie in Gamma_0(q1 q2)
Cyclotomic central_character(const DirichletCharacter& chi1, const DirichletCharacter& chi2, const Mat2& g);

void to_json(nlohmann::json& j, const DirichletCharacter& chi);

}  // namespace gds
