#include "gds/modgroup.hpp"

#include <deque>
#include <numeric>

#include <json.hpp>

namespace gds {

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::InvalidArgument, "64-bit overflow in matrix arithmetic");
  return r;
}

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::InvalidArgument, "64-bit overflow in matrix arithmetic");
  return r;
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

i64 inverse_mod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) fail(ErrorKind::InvalidArgument, "not invertible modulo " + std::to_string(m));
  return mod_floor(old_s, m);
}

Mat2::Mat2(i64 a_, i64 b_, i64 c_, i64 d_) : a(a_), b(b_), c(c_), d(d_) {
  i64 det = checked_add(checked_mul(a, d), -checked_mul(b, c));
  if (det != 1) fail(ErrorKind::InvalidArgument, "determinant is not 1: " + str());
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return Mat2(checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
              checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
              checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
              checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d)));
}

std::string Mat2::str() const {
  return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," + std::to_string(d) + "]]";
}

Mat2 Mat2::parse(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::InvalidArgument, "matrix must look like [[a,b],[c,d]]: " + std::string(text));
  }
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
    fail(ErrorKind::InvalidArgument, "matrix must look like [[a,b],[c,d]]: " + std::string(text));
  for (const auto& row : j)
    for (const auto& v : row)
      if (!v.is_number_integer()) fail(ErrorKind::InvalidArgument, "matrix entries must be integers");
  return Mat2(j[0][0].get<i64>(), j[0][1].get<i64>(), j[1][0].get<i64>(), j[1][1].get<i64>());
}

bool in_gamma0(const Mat2& g, i64 N) { return g.c % N == 0; }

bool in_gamma1(const Mat2& g, i64 N) {
  return g.c % N == 0 && mod_floor(g.a, N) == 1 % N && mod_floor(g.d, N) == 1 % N;
}

Cusp::Cusp(i64 p_, i64 q_) {
  if (p_ == 0 && q_ == 0) fail(ErrorKind::InvalidArgument, "0/0 is not a cusp");
  if (q_ == 0) {
    p = 1;
    q = 0;
    return;
  }
  i64 g = std::gcd(p_, q_);
  p = p_ / g;
  q = q_ / g;
  if (q < 0) {
    p = -p;
    q = -q;
  }
}

Cusp Cusp::from_rational(const Rational& x) {
  if (!x.num().fits_slong_p() || !x.den().fits_slong_p()) fail(ErrorKind::InvalidArgument, "cusp out of 64-bit range");
  return Cusp(x.num().get_si(), x.den().get_si());
}

Cusp Cusp::parse(std::string_view text) {
  if (text == "inf" || text == "oo" || text == "infinity") return infinity();
  return from_rational(Rational::parse(text));
}

Rational Cusp::value() const {
  if (is_infinity()) fail(ErrorKind::InvalidArgument, "infinity has no rational value");
  return Rational(Integer(static_cast<long>(p)), Integer(static_cast<long>(q)));
}

std::string Cusp::str() const {
  if (is_infinity()) return "inf";
  if (q == 1) return std::to_string(p);
  return std::to_string(p) + "/" + std::to_string(q);
}

Cusp cusp_apply(const Mat2& g, const Cusp& x) {
  return Cusp(checked_add(checked_mul(g.a, x.p), checked_mul(g.b, x.q)),
              checked_add(checked_mul(g.c, x.p), checked_mul(g.d, x.q)));
}

Rational cocycle_j(const Mat2& g, const Cusp& x) {
  if (x.is_infinity()) fail(ErrorKind::InvalidArgument, "cocycle at infinity");
  i64 num = checked_add(checked_mul(g.c, x.p), checked_mul(g.d, x.q));
  if (num == 0) fail(ErrorKind::InvalidArgument, "cocycle pole at " + x.str());
  return Rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(x.q)));
}

namespace {

template <class T>
std::string poly_str(const std::vector<T>& c, const std::string& var, auto&& coeff_str, auto&& is_negative) {
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == T()) continue;
    bool neg = is_negative(c[i]);
    std::string body = coeff_str(neg ? -c[i] : c[i]);
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::string term;
    if (i == 0)
      term = body;
    else if (body == "1")
      term = mono;
    else
      term = body + "*" + mono;
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace

template <>
std::string Poly<Rational>::str(const std::string& var) const {
  return poly_str(c_, var, [](const Rational& r) { return r.str(); }, [](const Rational& r) { return r.sign() < 0; });
}

template <>
std::string Poly<Cyclotomic>::str(const std::string& var) const {
  return poly_str(
      c_, var,
      [](const Cyclotomic& x) { return x.is_rational() ? x.str() : "(" + x.str() + ")"; },
      [](const Cyclotomic& x) { return x.is_rational() && x.rational_value().sign() < 0; });
}

RationalPoly rational_part(const CyclotomicPoly& P) {
  std::vector<Rational> c;
  for (const auto& v : P.coeffs()) c.push_back(v.rational_value());
  return RationalPoly(std::move(c));
}

CyclotomicPoly to_cyclotomic(const RationalPoly& P) {
  std::vector<Cyclotomic> c;
  for (const auto& v : P.coeffs()) c.emplace_back(v);
  return CyclotomicPoly(std::move(c));
}

std::vector<Mat2> enumerate_G(i64 N, i64 j) {
  std::vector<Mat2> out;
  i64 top = checked_mul(N, j);
  for (i64 c = N; c < top; c += N) {
    for (i64 a = 1; a < top; a += N) {
      if (std::gcd(a, c) != 1) continue;
      i64 d = inverse_mod(a, c);
      i64 b = (checked_mul(a, d) - 1) / c;
      out.emplace_back(a, b, c, d);
    }
  }
  return out;
}

Mat2 letter_matrix(Letter l) {
  switch (l) {
    case Letter::S: return Mat2::S();
    case Letter::T: return Mat2::T(1);
    case Letter::Tinv: return Mat2::T(-1);
  }
  return Mat2();
}

std::vector<Letter> sl2z_word(const Mat2& g) {
  std::vector<Letter> w;
  auto push_power = [&](i64 n) {
    for (i64 i = 0; i < (n < 0 ? -n : n); ++i) w.push_back(n > 0 ? Letter::T : Letter::Tinv);
  };
  Mat2 cur = g;
  while (cur.c != 0) {
    i64 q = floor_div(cur.a, cur.c);
    push_power(q);
    cur = Mat2::T(-q) * cur;
    w.push_back(Letter::S);
    cur = Mat2::S().inverse() * cur;
  }
  if (cur.a == 1) {
    push_power(cur.b);
  } else {
    w.push_back(Letter::S);
    w.push_back(Letter::S);
    push_power(-cur.b);
  }
  return w;
}

i64 gamma1_index(i64 N) {
  i64 r = N * N, m = N;
  for (i64 p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r = r / (p * p) * (p * p - 1);
  }
  if (m > 1) r = r / (m * m) * (m * m - 1);
  return r;
}

Gamma1Cosets::Gamma1Cosets(i64 N, std::vector<Letter> moves) : N_(N), moves_(std::move(moves)) {
  if (N < 5) fail(ErrorKind::GeneratorLevel, "generating sets need N >= 5 (got " + std::to_string(N) + ")");
  reps_.push_back(Mat2::identity());
  index_[key(Mat2::identity())] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (Letter x : moves_) {
      Mat2 g = reps_[i] * letter_matrix(x);
      auto k = key(g);
      if (index_.count(k)) continue;
      index_[k] = reps_.size();
      reps_.push_back(g);
      queue.push_back(reps_.size() - 1);
    }
  }
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    for (std::size_t mi = 0; mi < moves_.size(); ++mi) {
      Mat2 g = reps_[i] * letter_matrix(moves_[mi]);
      Mat2 s = g * reps_[coset_of(g)].inverse();
      if (s == Mat2::identity()) continue;
      std::size_t idx = gens_.size();
      for (std::size_t t = 0; t < gens_.size(); ++t)
        if (gens_[t] == s) idx = t;
      if (idx == gens_.size()) gens_.push_back(s);
      schreier_[{i, mi}] = {idx, 1};
    }
  }
}

std::pair<i64, i64> Gamma1Cosets::key(const Mat2& g) const { return {mod_floor(g.c, N_), mod_floor(g.d, N_)}; }

std::size_t Gamma1Cosets::coset_of(const Mat2& g) const { return index_.at(key(g)); }

std::vector<std::pair<std::size_t, int>> Gamma1Cosets::rewrite(const Mat2& g) const {
  if (!in_gamma1(g, N_)) fail(ErrorKind::Membership, g.str() + " is not in Gamma_1(" + std::to_string(N_) + ")");
  auto move_index = [&](Letter l) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < moves_.size(); ++i)
      if (moves_[i] == l) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  std::vector<std::pair<std::size_t, int>> out;
  std::size_t cur = 0;
  for (Letter l : sl2z_word(g)) {
    std::ptrdiff_t mi = move_index(l);
    if (mi >= 0) {
      auto it = schreier_.find({cur, static_cast<std::size_t>(mi)});
      if (it != schreier_.end()) out.push_back(it->second);
      cur = coset_of(reps_[cur] * letter_matrix(l));
      continue;
    }
    // only T^{-1} can be missing; step back along a T edge
    if (l != Letter::Tinv) fail(ErrorKind::Consistency, "move set cannot express the word");
    std::ptrdiff_t ti = move_index(Letter::T);
    std::size_t prev = coset_of(reps_[cur] * Mat2::T(-1));
    auto it = schreier_.find({prev, static_cast<std::size_t>(ti)});
    if (it != schreier_.end()) out.push_back({it->second.first, -it->second.second});
    cur = prev;
  }
  if (cur != 0) fail(ErrorKind::Consistency, "rewrite did not return to the trivial coset");
  return out;
}

std::vector<Mat2> gamma1_generators(i64 N, std::vector<Letter> moves) {
  return Gamma1Cosets(N, std::move(moves)).generators();
}

i64 partial_quotient_max(i64 p, i64 q) {
  if (q == 0) fail(ErrorKind::InvalidArgument, "partial quotients of infinity");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  i64 r = mod_floor(p, q);
  i64 best = 0;
  while (r != 0) {
    i64 a = q / r;
    best = std::max(best, a);
    i64 t = q - a * r;
    q = r;
    r = t;
  }
  return best == 0 ? 1 : best;
}

i64 partial_quotient_max(const Rational& x) {
  Cusp c = Cusp::from_rational(x);
  return partial_quotient_max(c.p, c.q);
}

}  // namespace gds
