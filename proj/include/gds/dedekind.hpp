#pragma once

#include <vector>

#include "gds/characters.hpp"
#include "gds/exactnum.hpp"
#include "gds/modgroup.hpp"

namespace gds {

class SumContext {
 public:
  SumContext(DirichletCharacter chi1, DirichletCharacter chi2, int k);

  const DirichletCharacter& chi1() const { return chi1_; }
  const DirichletCharacter& chi2() const { return chi2_; }
  int k() const { return k_; }
  long q1() const { return chi1_.modulus(); }
  long q2() const { return chi2_.modulus(); }
  i64 N() const { return chi1_.modulus() * chi2_.modulus(); }
  // both characters real, so every S value is rational
  bool quadratic() const { return chi1_.order() <= 2 && chi2_.order() <= 2; }
  // lcm of the two character orders; S lives in Q(zeta_M)
  unsigned value_order() const { return order_; }
  SumContext swapped() const { return SumContext(chi2_, chi1_, k_); }
  std::string str() const;

  Cyclotomic psi(const Mat2& g) const;

 private:
  DirichletCharacter chi1_, chi2_;
  int k_;
  unsigned order_;
};

// "chi3,chi4" or "5:1,5:3"
SumContext parse_context(std::string_view pair, int k);

Rational classical_s(i64 h, i64 k);

// All sums with a fixed denominator c.  Building costs O(c q1); each S(a)
// then costs O(c M).
class DenominatorTable {
 public:
  DenominatorTable(const SumContext& ctx, i64 c);

  i64 c() const { return c_; }
  Cyclotomic S(i64 a) const;
  Cyclotomic S_tilde(i64 a) const;
  // quadratic contexts only
  Rational S_tilde_rational(i64 a) const;
  Rational S_rational(i64 a) const;

 private:
  i64 c_;
  int k_;
  bool quadratic_;
  unsigned M_;
  bool wide_;
  Integer scale_;  // 2 D c^2
  std::vector<__int128> f128_;
  std::vector<Integer> fbig_;
  std::vector<int> e2_;
  std::vector<Integer> accumulate(i64 a) const;
};

Cyclotomic sum_S(const SumContext& ctx, i64 a, i64 c);
Cyclotomic sum_S_tilde(const SumContext& ctx, i64 a, i64 c);
Rational sum_S_rational(const SumContext& ctx, i64 a, i64 c);

Cyclotomic shat(const SumContext& ctx, const Cusp& x);
// S-hat(x) - j(g, x)^{k-2} S-hat(g x); at the pole x = g^{-1} infinity the
// value of the polynomial is S-hat(x)
Cyclotomic h_eval(const SumContext& ctx, const Mat2& g, const Cusp& x);

struct Interpolation {
  CyclotomicPoly poly;
  std::vector<Cusp> nodes;  // last node is the held-out check
};
Interpolation h_interpolate_full(const SumContext& ctx, const Mat2& g);
CyclotomicPoly h_interpolate(const SumContext& ctx, const Mat2& g);
RationalPoly h_interpolate_rational(const SumContext& ctx, const Mat2& g);

}  // namespace gds
