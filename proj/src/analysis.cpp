#include "gds/analysis.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gds/parallel.hpp"

namespace gds {

std::string display_scale(const Rational& r, long q1) {
  if (r.is_integer()) return r.str();
  Rational scaled = r * Rational(q1);
  if (scaled.is_integer()) return scaled.str() + "/" + std::to_string(q1);
  return r.str();
}

TableCell image_scale(const SumContext& ctx, i64 j, unsigned threads) {
  if (!ctx.quadratic()) fail(ErrorKind::InvalidArgument, "image_scale needs two real characters");
  if (j < 1) fail(ErrorKind::InvalidArgument, "j must be at least 1");
  auto start = std::chrono::steady_clock::now();
  const i64 N = ctx.N();
  const i64 top = checked_mul(j, N);
  std::vector<i64> cs;
  for (i64 c = N; c < top; c += N) cs.push_back(c);
  std::vector<Rational> part(cs.size());
  std::vector<std::size_t> counts(cs.size());
  parallel_for(
      cs.size(),
      [&](std::size_t i) {
        DenominatorTable t(ctx, cs[i]);
        Rational g;
        std::size_t n = 0;
        for (i64 a = 1; a < top; a += N) {
          if (std::gcd(a, cs[i]) != 1) continue;
          g = rational_gcd(g, t.S_tilde_rational(a));
          ++n;
        }
        part[i] = g;
        counts[i] = n;
      },
      threads);
  TableCell cell;
  cell.chi1 = ctx.chi1().label();
  cell.chi2 = ctx.chi2().label();
  cell.k = ctx.k();
  cell.j = j;
  cell.r = part.empty() ? Rational() : rational_gcd_set(part);
  cell.display = display_scale(cell.r, ctx.q1());
  cell.count = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

const std::vector<TableLayout>& table_layouts() {
  static const std::vector<TableLayout> layouts = {
      {"even k, part 1",
       {{"chi3", "chi3"}, {"chi3", "chi4"}, {"chi4", "chi3"}, {"chi4", "chi4"}, {"chi3", "chi7"}, {"chi7", "chi3"}},
       {2, 4, 6, 8}},
      {"even k, part 2",
       {{"chi3", "chi8b"}, {"chi8b", "chi3"}, {"chi5", "chi5"}, {"chi4", "chi7"}, {"chi7", "chi4"}, {"chi4", "chi8b"}, {"chi8b", "chi4"}},
       {2, 4, 6, 8}},
      {"odd k",
       {{"chi3", "chi5"}, {"chi5", "chi3"}, {"chi4", "chi5"}, {"chi5", "chi4"}, {"chi3", "chi8a"}, {"chi8a", "chi3"}, {"chi4", "chi8a"}, {"chi8a", "chi4"}},
       {3, 5, 7, 9}},
  };
  return layouts;
}

std::vector<std::vector<TableCell>> image_tables(i64 j, unsigned threads, const Progress& progress) {
  std::vector<std::vector<TableCell>> out;
  for (const auto& layout : table_layouts()) {
    std::vector<TableCell> cells;
    for (const auto& [a, b] : layout.pairs)
      for (int k : layout.ks) {
        SumContext ctx(named_character(a), named_character(b), k);
        cells.push_back(image_scale(ctx, j, threads));
        if (progress) progress(ctx.str() + " r=" + cells.back().display);
      }
    out.push_back(std::move(cells));
  }
  return out;
}

bool poly_space_member(const RationalPoly& P, int k, const Rational& m, long q) {
  if (P.degree() > k - 2) fail(ErrorKind::InvalidArgument, "polynomial degree exceeds k-2");
  for (int i = 0; i <= P.degree(); ++i) {
    Rational a = P.coeff(static_cast<std::size_t>(i));
    if (a.is_zero()) continue;
    if (!in_multiples(a * pow(Rational(q), k - 1 - i), m)) return false;
  }
  return true;
}

ContainmentReport containment_m(const SumContext& ctx, const std::vector<Mat2>& generators, unsigned threads) {
  if (!ctx.quadratic()) fail(ErrorKind::InvalidArgument, "containment needs two real characters");
  ContainmentReport rep;
  rep.chi1 = ctx.chi1().label();
  rep.chi2 = ctx.chi2().label();
  rep.k = ctx.k();
  rep.generators = generators;
  rep.generator_count = generators.size();
  rep.polys.resize(generators.size());
  parallel_for(
      generators.size(), [&](std::size_t i) { rep.polys[i] = h_interpolate_rational(ctx, generators[i]); }, threads);
  std::vector<Rational> scaled{Rational()};
  const int k = ctx.k();
  for (const auto& P : rep.polys)
    for (int i = 0; i <= P.degree(); ++i)
      scaled.push_back(P.coeff(static_cast<std::size_t>(i)) * pow(Rational(ctx.q1()), k - 1 - i));
  rep.m = rational_gcd_set(scaled);
  rep.scale = rep.m / Rational(ctx.q1());
  rep.all_members = true;
  for (const auto& P : rep.polys)
    if (!poly_space_member(P, k, rep.m, ctx.q1())) rep.all_members = false;
  return rep;
}

ContainmentReport containment_m(const SumContext& ctx, unsigned threads) {
  return containment_m(ctx, gamma1_generators(ctx.N()), threads);
}

ConjectureCheck conjecture_shape(const Rational& value, int k, long q1) {
  ConjectureCheck out;
  out.value = value;
  Integer target = 2 * k - 2;
  auto divides = [&](const Integer& d) { return d != 0 && target % abs(d) == 0; };
  if (value.is_integer()) {
    out.integral_form = true;
    out.d = value.num();
  } else {
    Rational s = value * Rational(q1);
    if (s.is_integer()) {
      out.q1_form = true;
      out.d = s.num();
    }
  }
  out.divides = (out.integral_form || out.q1_form) && divides(out.d);
  return out;
}

namespace {

Integer factorial(int n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

const Rational& pi_low() {
  static const Rational v(Integer(103993), Integer(33102));
  return v;
}
const Rational& pi_high() {
  static const Rational v(Integer(104348), Integer(33215));
  return v;
}

}  // namespace

double trivial_bound(const SumContext& ctx, i64 c) {
  const double pi = std::numbers::pi;
  const int k = ctx.k();
  return static_cast<double>(c) * static_cast<double>(ctx.q1()) * pi * pi / 6.0 * std::tgamma(k) / std::pow(2 * pi, k - 1);
}

bool within_trivial_bound(const SumContext& ctx, i64 c, const Rational& abs_S) {
  const int k = ctx.k();
  // c q1 (k-1)! / (6 2^{k-1}) pi^{3-k}, taking the pi bracket that makes it smallest
  Rational base = Rational(static_cast<long>(c)) * Rational(ctx.q1()) * Rational(factorial(k - 1)) /
                  (Rational(6) * pow(Rational(2), k - 1));
  int e = 3 - k;
  Rational bound = base * (e >= 0 ? pow(pi_low(), e) : pow(pi_high(), e));
  return abs_S <= bound;
}

namespace {

struct SweepEntry {
  i64 a, c;
  double abs_value;
  bool within;
  bool delta_ok;
  double ratio;  // negative when c' <= 1
};

std::vector<std::vector<SweepEntry>> sweep(const SumContext& ctx, i64 C, unsigned threads) {
  if (C < ctx.N()) fail(ErrorKind::InvalidArgument, "C must be at least q1 q2");
  std::vector<i64> cs;
  for (i64 c = ctx.N(); c <= C; c += ctx.N()) cs.push_back(c);
  std::vector<std::vector<SweepEntry>> out(cs.size());
  parallel_for(
      cs.size(),
      [&](std::size_t i) {
        const i64 c = cs[i];
        const i64 cp = c / ctx.q2();
        DenominatorTable t(ctx, c);
        for (i64 a = 1; a < c; ++a) {
          if (std::gcd(a, c) != 1) continue;
          SweepEntry e{a, c, 0, true, true, -1};
          if (ctx.quadratic()) {
            Rational s = abs(t.S_rational(a));
            e.abs_value = s.to_double();
            e.within = within_trivial_bound(ctx, c, s);
          } else {
            e.abs_value = std::abs(t.S(a).to_complex());
            e.within = e.abs_value <= trivial_bound(ctx, c) * (1 - 1e-12);
          }
          i64 d = inverse_mod(a, c);
          i64 Ma = partial_quotient_max(a, cp), Md = partial_quotient_max(d, cp);
          e.delta_ok = std::llabs(Ma - Md) <= 1;
          if (cp > 1) {
            double l = std::log(static_cast<double>(cp));
            e.ratio = e.abs_value / (static_cast<double>(Ma) * l * l);
          }
          out[i].push_back(e);
        }
      },
      threads);
  return out;
}

}  // namespace

BoundReport bound_statistics(const SumContext& ctx, i64 C, unsigned threads) {
  auto rows = sweep(ctx, C, threads);
  BoundReport rep;
  rep.chi1 = ctx.chi1().label();
  rep.chi2 = ctx.chi2().label();
  rep.k = ctx.k();
  rep.C = C;
  double sum = 0;
  std::size_t nratio = 0;
  for (const auto& row : rows)
    for (const auto& e : row) {
      ++rep.count;
      if (!e.within) ++rep.bound_violations;
      if (!e.delta_ok) ++rep.delta_violations;
      rep.max_abs = std::max(rep.max_abs, e.abs_value);
      if (e.ratio < 0) continue;
      sum += e.ratio;
      ++nratio;
      if (e.ratio > rep.max_ratio) {
        rep.max_ratio = e.ratio;
        rep.max_ratio_a = e.a;
        rep.max_ratio_c = e.c;
      }
    }
  rep.mean_ratio = nratio ? sum / static_cast<double>(nratio) : 0;
  rep.histogram.assign(10, 0);
  if (rep.max_ratio > 0)
    for (const auto& row : rows)
      for (const auto& e : row) {
        if (e.ratio < 0) continue;
        auto b = static_cast<std::size_t>(e.ratio / rep.max_ratio * 10);
        ++rep.histogram[std::min<std::size_t>(b, 9)];
      }
  return rep;
}

std::size_t exceptional_count(const SumContext& ctx, double alpha, i64 C, unsigned threads) {
  if (C < ctx.N()) fail(ErrorKind::InvalidArgument, "C must be at least q1 q2");
  double l = std::log(static_cast<double>(C));
  double threshold = alpha * l * l * l;
  const Rational exact_threshold{mpq_class(threshold)};
  std::vector<i64> cs;
  for (i64 c = ctx.N(); c <= C; c += ctx.N()) cs.push_back(c);
  std::vector<std::size_t> counts(cs.size());
  parallel_for(
      cs.size(),
      [&](std::size_t i) {
        DenominatorTable t(ctx, cs[i]);
        for (i64 a = 1; a < cs[i]; ++a) {
          if (std::gcd(a, cs[i]) != 1) continue;
          bool big = ctx.quadratic() ? abs(t.S_rational(a)) > exact_threshold : std::abs(t.S(a).to_complex()) > threshold;
          if (big) ++counts[i];
        }
      },
      threads);
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

void to_json(nlohmann::json& j, const TableCell& c) {
  j = nlohmann::json{{"pair", c.chi1 + "," + c.chi2}, {"k", c.k}, {"j", c.j}, {"r", c.r.str()}, {"r_display", c.display},
                     {"count", c.count}, {"seconds", c.seconds}};
}

void to_json(nlohmann::json& j, const ContainmentReport& r) {
  nlohmann::json polys = nlohmann::json::array();
  for (std::size_t i = 0; i < r.polys.size(); ++i)
    polys.push_back({{"matrix", r.generators[i].str()}, {"h", r.polys[i].str()}});
  j = nlohmann::json{{"pair", r.chi1 + "," + r.chi2}, {"k", r.k}, {"generators", r.generator_count}, {"m", r.m.str()},
                     {"containment", "(" + r.scale.str() + ")Z"}, {"all_members", r.all_members}, {"h", polys}};
}

void to_json(nlohmann::json& j, const BoundReport& r) {
  j = nlohmann::json{{"pair", r.chi1 + "," + r.chi2}, {"k", r.k}, {"C", r.C}, {"count", r.count},
                     {"bound_violations", r.bound_violations}, {"delta_violations", r.delta_violations},
                     {"max_abs_S", r.max_abs}, {"max_ratio", r.max_ratio},
                     {"max_ratio_at", {{"a", r.max_ratio_a}, {"c", r.max_ratio_c}}}, {"mean_ratio", r.mean_ratio},
                     {"histogram", r.histogram}};
}

}  // namespace gds
