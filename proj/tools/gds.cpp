#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "gds/analysis.hpp"
#include "gds/error.hpp"
#include "gds/fricke.hpp"
#include "gds/oracle.hpp"
#include "gds/parallel.hpp"
#include "gds/verify.hpp"

using namespace gds;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kUnknownPair = 3, kParity = 4, kLevel = 5, kInvalidInput = 6, kNumeric = 7, kOther = 8 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownCharacter: return kUnknownPair;
    case ErrorKind::Parity: return kParity;
    case ErrorKind::GeneratorLevel: return kLevel;
    case ErrorKind::InvalidArgument:
    case ErrorKind::Membership: return kInvalidInput;
    case ErrorKind::Numeric: return kNumeric;
    case ErrorKind::Consistency: return kOther;
  }
  return kOther;
}

struct Common {
  std::string format = "pretty";
  unsigned threads = 0;
  double tolerance = 1e-8;
  std::uint64_t seed = 20240611;
  bool quiet = false;
  bool timing = false;
};

void progress(const Common& o, const std::string& msg) {
  if (!o.quiet) std::cerr << msg << std::endl;
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string complex_str(cplx z) { return fmt(z.real(), 15) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag()), 15) + "i"; }

void add_format(CLI::App* app, Common& o, bool csv = false) {
  std::vector<std::string> choices = {"pretty", "json"};
  if (csv) choices.push_back("csv");
  app->add_option("--format", o.format, "output format")->check(CLI::IsMember(choices))->capture_default_str();
}

int cmd_sum(const Common& o, const std::string& pair, int k, i64 a, i64 c, bool oracle) {
  SumContext ctx = parse_context(pair, k);
  if (c <= 0) fail(ErrorKind::InvalidArgument, "c must be positive");
  Cyclotomic S = sum_S(ctx, a, c);
  Cyclotomic St = sum_S_tilde(ctx, a, c);
  bool ok = true;
  json out{{"pair", ctx.str()}, {"a", a}, {"c", c}, {"S", S}, {"S_tilde", St}};
  std::string oracle_line;
  if (oracle) {
    TruncationPolicy policy;
    policy.tolerance = o.tolerance * 1e-2;
    i64 d = inverse_mod(mod_floor(a, c), c);
    i64 aa = inverse_mod(d, c);
    Mat2 g(aa, (aa * d - 1) / c, c, d);
    cplx num = sum_prefactor(ctx) * phi_numeric(ctx, g, 1.0, -static_cast<double>(aa) / static_cast<double>(c), policy);
    double residual = std::abs(num - S.to_complex());
    ok = residual < o.tolerance;
    out["oracle"] = {{"value", {num.real(), num.imag()}}, {"residual", residual}, {"pass", ok}};
    oracle_line = "oracle   " + complex_str(num) + "\nresidual " + fmt(residual, 3) + (ok ? " (pass)" : " (FAIL)");
  }
  if (o.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "pair     " << ctx.str() << "\n"
              << "S        " << S.str() << "\n"
              << "S~       " << St.str() << "\n";
    if (S.is_rational() && !S.rational_value().is_zero()) std::cout << "float    " << fmt(S.rational_value().to_double(), 15) << "\n";
    if (!S.is_rational()) std::cout << "complex  " << complex_str(S.to_complex()) << "\n";
    if (oracle) std::cout << oracle_line << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_table(const Common& o, i64 j) {
  auto tables = image_tables(j, o.threads, [&](const std::string& m) { progress(o, m); });
  const auto& layouts = table_layouts();
  if (o.format == "json") {
    json out = json::array();
    for (std::size_t t = 0; t < tables.size(); ++t)
      for (const auto& cell : tables[t]) {
        json jc = cell;
        jc["table"] = layouts[t].title;
        if (!o.timing) jc.erase("seconds");
        out.push_back(jc);
      }
    std::cout << out.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "table,chi1,chi2,k,j,r,display,count" << (o.timing ? ",seconds" : "") << "\n";
    for (std::size_t t = 0; t < tables.size(); ++t)
      for (const auto& c : tables[t]) {
        std::cout << '"' << layouts[t].title << "\"," << c.chi1 << ',' << c.chi2 << ',' << c.k << ',' << c.j << ','
                  << c.r.str() << ',' << c.display << ',' << c.count;
        if (o.timing) std::cout << ',' << fmt(c.seconds, 4);
        std::cout << "\n";
      }
  } else {
    for (std::size_t t = 0; t < tables.size(); ++t) {
      const auto& L = layouts[t];
      std::cout << L.title << " (j = " << j << ")\n";
      std::cout << std::setw(3) << "k";
      for (const auto& [a, b] : L.pairs) std::cout << std::setw(14) << ("(" + a + "," + b + ")");
      std::cout << "\n";
      for (std::size_t r = 0; r < L.ks.size(); ++r) {
        std::cout << std::setw(3) << L.ks[r];
        for (std::size_t p = 0; p < L.pairs.size(); ++p) std::cout << std::setw(14) << tables[t][p * L.ks.size() + r].display;
        std::cout << "\n";
      }
      if (t + 1 < tables.size()) std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_hpoly(const Common& o, const std::string& pair, int k, const std::string& matrix, const std::string& var) {
  SumContext ctx = parse_context(pair, k);
  Mat2 g = Mat2::parse(matrix);
  Interpolation I = h_interpolate_full(ctx, g);
  if (o.format == "json") {
    json nodes = json::array();
    for (const auto& x : I.nodes) nodes.push_back(x.str());
    json coeffs = json::array();
    for (const auto& c : I.poly.coeffs()) coeffs.push_back(c);
    std::cout << json{{"pair", ctx.str()}, {"matrix", g.str()}, {"poly", I.poly.str(var)}, {"coefficients", coeffs}, {"nodes", nodes}}.dump(2)
              << "\n";
  } else {
    std::cout << I.poly.str(var) << "\n";
  }
  return kOk;
}

int cmd_gens(const Common& o, i64 N) {
  if (N < 5) fail(ErrorKind::GeneratorLevel, "generators are only produced for N >= 5");
  auto gens = gamma1_generators(N);
  if (o.format == "json") {
    json list = json::array();
    for (const auto& g : gens) list.push_back(g.str());
    std::cout << json{{"N", N}, {"cosets", gamma1_index(N)}, {"generators", list}}.dump(2) << "\n";
  } else {
    progress(o, std::to_string(gens.size()) + " generators, " + std::to_string(gamma1_index(N)) + " cosets");
    for (const auto& g : gens) std::cout << g.str() << "\n";
  }
  return kOk;
}

int cmd_contain(const Common& o, const std::string& pair, int k, bool show_polys) {
  SumContext ctx = parse_context(pair, k);
  ContainmentReport rep = containment_m(ctx, o.threads);
  ConjectureCheck cc = conjecture_shape(rep.scale, k, ctx.q1());
  if (o.format == "json") {
    json j = rep;
    if (!show_polys) j.erase("polys"), j.erase("generators");
    j["conjecture"] = {{"integral_form", cc.integral_form}, {"q1_form", cc.q1_form}, {"d", cc.d.get_str()}, {"divides_2k_minus_2", cc.divides}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "pair        " << ctx.str() << "\n"
              << "generators  " << rep.generator_count << "\n"
              << "m           " << rep.m.str() << "\n"
              << "verdict     image in (" << rep.scale.str() << ")Z\n"
              << "members     " << (rep.all_members ? "all h in P(k;m,q1)" : "NOT all members") << "\n"
              << "conjecture  d = " << cc.d.get_str() << (cc.divides ? " divides " : " does not divide ") << 2 * k - 2 << "\n";
    if (show_polys)
      for (std::size_t i = 0; i < rep.polys.size(); ++i) std::cout << rep.generators[i].str() << "  " << rep.polys[i].str("a") << "\n";
  }
  return rep.all_members ? kOk : kCheckFailed;
}

int cmd_bounds(const Common& o, const std::string& pair, int k, i64 C, double alpha) {
  SumContext ctx = parse_context(pair, k);
  if (C < ctx.N()) fail(ErrorKind::InvalidArgument, "C must be at least q1 q2");
  BoundReport rep = bound_statistics(ctx, C, o.threads);
  bool ok = rep.bound_violations == 0 && rep.delta_violations == 0;
  json j = rep;
  if (alpha > 0) j["exceptional"] = {{"alpha", alpha}, {"count", exceptional_count(ctx, alpha, C, o.threads)}};
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "pair              " << ctx.str() << "\n"
              << "C                 " << C << "\n"
              << "sums              " << rep.count << "\n"
              << "bound violations  " << rep.bound_violations << "\n"
              << "delta violations  " << rep.delta_violations << "\n"
              << "max |S|           " << fmt(rep.max_abs) << "\n"
              << "max ratio         " << fmt(rep.max_ratio) << " at a/c = " << rep.max_ratio_a << "/" << rep.max_ratio_c << "\n"
              << "mean ratio        " << fmt(rep.mean_ratio) << "\n"
              << "histogram        ";
    for (auto h : rep.histogram) std::cout << ' ' << h;
    std::cout << "\n";
    if (alpha > 0) std::cout << "L(" << alpha << ", " << C << ")" << std::string(11, ' ') << j["exceptional"]["count"].get<std::size_t>() << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_verify(const Common& o, const std::string& suite) {
  VerifyOptions opts;
  opts.seed = o.seed;
  opts.threads = o.threads;
  opts.oracle_tolerance = o.tolerance;
  auto results = run_suite(suite, opts);
  bool ok = true;
  json out = json::array();
  for (const auto& r : results) {
    ok = ok && r.pass;
    progress(o, r.name + ": " + fmt(r.seconds, 3) + " s");
    json j = r;
    if (!o.timing) j.erase("seconds");
    out.push_back(j);
    if (o.format != "json") std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " [" << r.cases << "] " << r.detail << "\n";
  }
  if (o.format == "json") std::cout << out.dump(2) << "\n";
  return ok ? kOk : kCheckFailed;
}

int cmd_plotdata(const Common& o, const std::string& pair, int k, i64 j, const std::string& matrix) {
  SumContext ctx = parse_context(pair, k);
  std::optional<Mat2> g;
  if (!matrix.empty()) g = Mat2::parse(matrix);
  auto mats = enumerate_G(ctx.N(), j);
  progress(o, std::to_string(mats.size()) + " cusps");
  std::vector<Cyclotomic> values(mats.size());
  parallel_for(
      mats.size(),
      [&](std::size_t i) {
        Cusp x(mats[i].a, mats[i].c);
        values[i] = g ? h_eval(ctx, *g, x) : shat(ctx, x);
      },
      o.threads);
  std::cout << "a,c,x,re,im\n";
  std::cout << std::setprecision(17);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    cplx v = values[i].to_complex();
    std::cout << mats[i].a << ',' << mats[i].c << ',' << Cusp(mats[i].a, mats[i].c).to_double() << ',' << v.real() << ','
              << v.imag() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Dedekind sums for pairs of primitive Dirichlet characters"};
  app.require_subcommand(1);
  app.fallthrough();
  Common o;
  app.add_option("--threads", o.threads, "worker threads (0 = all cores; GDS_THREADS overrides)");
  app.add_option("--tolerance", o.tolerance, "oracle tolerance")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for sampled checks")->capture_default_str();
  app.add_flag("--quiet", o.quiet, "suppress progress on stderr");
  app.add_flag("--timing", o.timing, "include wall-clock seconds in table/verify output");
  app.footer(
      "Characters: chi3 chi4 chi5 chi7 chi8a chi8b, or q:index where index enumerates characters mod q in mixed radix over\n"
      "the exponents of the cyclic factors of (Z/qZ)^x (odd prime powers by smallest primitive root, then 2-power\n"
      "factors -1 and 5), first factor fastest.  Pairs are written chi1,chi2.\n"
      "CSV schemas: table -> table,chi1,chi2,k,j,r,display,count[,seconds]; plotdata -> a,c,x,re,im.\n"
      "Exit codes: 0 ok, 1 check failed, 2 usage, 3 unknown character, 4 parity, 5 level too small for generators,\n"
      "6 invalid matrix or cusp, 7 numeric failure, 8 other.");

  std::string pair;
  int k = 2;
  i64 a = 0, c = 0, j = 50, N = 0, C = 500;
  bool oracle = false, show_polys = false;
  std::string matrix, suite = "all", var = "a";
  double alpha = 0;

  auto* sum = app.add_subcommand("sum", "exact S(a/c) and S~");
  sum->add_option("--pair", pair, "chi1,chi2")->required();
  sum->add_option("--k", k, "weight")->required();
  sum->add_option("--a", a)->required();
  sum->add_option("--c", c)->required();
  sum->add_flag("--oracle", oracle, "append the numeric cross-check");
  add_format(sum, o);

  auto* table = app.add_subcommand("table", "the three tables of r over G_j(q1 q2)");
  table->add_option("--j", j, "sweep radius")->capture_default_str()->check(CLI::PositiveNumber);
  add_format(table, o, true);

  auto* hpoly = app.add_subcommand("hpoly", "interpolated h polynomial of a matrix in Gamma_1");
  hpoly->add_option("--pair", pair)->required();
  hpoly->add_option("--k", k)->required();
  hpoly->add_option("--matrix", matrix, "[[a,b],[c,d]]")->required();
  hpoly->add_option("--var", var, "variable name")->capture_default_str();
  add_format(hpoly, o);

  auto* gens = app.add_subcommand("gens", "Schreier generators of Gamma_1(N)");
  gens->add_option("--N", N)->required();
  add_format(gens, o);

  auto* contain = app.add_subcommand("contain", "containment scale from generator h polynomials");
  contain->add_option("--pair", pair)->required();
  contain->add_option("--k", k)->required();
  contain->add_flag("--polys", show_polys, "list every generator polynomial");
  add_format(contain, o);

  auto* bounds = app.add_subcommand("bounds", "trivial bound and partial quotient statistics");
  bounds->add_option("--pair", pair)->required();
  bounds->add_option("--k", k)->required();
  bounds->add_option("--C", C)->capture_default_str();
  bounds->add_option("--alpha", alpha, "also count |S| > alpha log^3 C");
  add_format(bounds, o);

  auto* verify = app.add_subcommand("verify", "run a named property suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", suite)->check(CLI::IsMember(suites))->capture_default_str();
  add_format(verify, o);

  auto* plot = app.add_subcommand("plotdata", "S-hat (or h with --matrix) over the cusps of G_j(q1 q2), CSV");
  plot->add_option("--pair", pair)->required();
  plot->add_option("--k", k)->required();
  plot->add_option("--j", j)->capture_default_str()->check(CLI::PositiveNumber);
  plot->add_option("--matrix", matrix, "evaluate h for this matrix instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*sum) return cmd_sum(o, pair, k, a, c, oracle);
    if (*table) return cmd_table(o, j);
    if (*hpoly) return cmd_hpoly(o, pair, k, matrix, var);
    if (*gens) return cmd_gens(o, N);
    if (*contain) return cmd_contain(o, pair, k, show_polys);
    if (*bounds) return cmd_bounds(o, pair, k, C, alpha);
    if (*verify) return cmd_verify(o, suite);
    if (*plot) return cmd_plotdata(o, pair, k, j, matrix);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kOther;
  }
  return kUsage;
}
