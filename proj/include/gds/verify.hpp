#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "gds/dedekind.hpp"

namespace gds {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::size_t cases = 0;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  unsigned threads = 0;
  double oracle_tolerance = 1e-8;
};

using Rng = std::mt19937_64;

i64 uniform(Rng& rng, i64 lo, i64 hi);
// c = N m with 1 <= m <= max_mult, |d| <= c; roughly one sample in ten is a translation
Mat2 random_gamma0(Rng& rng, i64 N, i64 max_mult);
Mat2 random_gamma1(Rng& rng, i64 N, i64 max_mult);
// a cusp a/c with N | c, 0 < c <= N max_mult
Cusp random_infinity_cusp(Rng& rng, i64 N, i64 max_mult);

const std::vector<std::string>& suite_names();
std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& opts = {});

CheckResult check_crossed_hom_weight2(const VerifyOptions& opts, std::size_t samples = 200);
CheckResult check_crossed_hom_h(const VerifyOptions& opts, std::size_t samples = 50);
CheckResult check_periodicity(const VerifyOptions& opts, std::size_t samples = 100);
CheckResult check_a_mod_c(const VerifyOptions& opts, std::size_t samples = 100);
CheckResult check_gauss_sums(long max_q = 32);
CheckResult check_worpitzky(const VerifyOptions& opts, std::size_t samples = 500);
CheckResult check_slash_stability(const VerifyOptions& opts, std::size_t samples = 100);
CheckResult check_evaluation_scaling(const VerifyOptions& opts, std::size_t samples = 100);
CheckResult check_oracle(const VerifyOptions& opts, std::size_t samples = 100);
CheckResult check_fricke_k2(const VerifyOptions& opts, std::size_t samples = 30);
CheckResult check_reciprocity_numeric(const VerifyOptions& opts, std::size_t samples = 20);
CheckResult check_shat_zero(const VerifyOptions& opts);
CheckResult check_three_term(const VerifyOptions& opts, std::size_t samples = 10);
CheckResult check_bounds(const VerifyOptions& opts, i64 C = 500);

// quadratic pairs (q1 q2 <= max_N) with every k in [2, max_k] meeting the parity condition
std::vector<SumContext> quadratic_contexts(i64 max_N, int max_k);
// all primitive nontrivial pairs with q1 q2 <= max_N and 2 <= k <= max_k
std::vector<SumContext> all_contexts(i64 max_N, int max_k);

void to_json(nlohmann::json& j, const CheckResult& r);

}  // namespace gds
