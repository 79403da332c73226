#pragma once

#include <vector>

#include "gds/characters.hpp"
#include "gds/exactnum.hpp"

namespace gds {

// B_n with B_1 = -1/2
Rational bernoulli_number(int n);
// ascending coefficients of B_k(x)
const std::vector<Rational>& bernoulli_poly_coeffs(int k);
Rational bernoulli_poly(int k, const Rational& x);
// 0 at integers, B_k({x}) elsewhere
Rational periodic_bernoulli(int k, const Rational& x);
// explicit double sum over Worpitzky-style differences; x must not be an integer
Rational worpitzky_eval(int k, const Rational& x);
// B_{k,chi}(x) = q^{k-1} sum_{n mod q} conj(chi)(n) B_k((x+n)/q)
Cyclotomic char_bernoulli(int k, const DirichletCharacter& chi, const Rational& x);
// lcm of the denominators of B_0..B_k
Integer bernoulli_denominator_lcm(int k);

}  // namespace gds
