#pragma once

#include <json.hpp>

#include "gds/oracle.hpp"

namespace gds {

Cusp fricke_apply(i64 N, const Cusp& x);
// gamma' = (d, -c; -bN, a) for gamma = (a, b; cN, d)
Mat2 fricke_conjugate(const Mat2& g, i64 N);

// q1^{2-k} B_{k-1,chi1}(0) B_{1,chi2}(0)
Cyclotomic shat_at_zero(const SumContext& ctx);
// S(gamma) = S-hat(gamma infinity); zero when c = 0
Cyclotomic sum_S_matrix(const SumContext& ctx, const Mat2& g);

struct ExactReport {
  Cyclotomic lhs, rhs, residual;
  bool pass = false;
};
ExactReport verify_reciprocity_k2(const SumContext& ctx, const Mat2& g);

struct NumericReport {
  cplx lhs, rhs;
  double residual = 0;
  double scale = 0;
  bool pass = false;
};
NumericReport verify_reciprocity_general(const SumContext& ctx, const Mat2& g, const Cusp& x,
                                         const TruncationPolicy& policy = {}, double tolerance = 1e-6);
NumericReport three_term_residual(const SumContext& ctx, const Mat2& g, const Cusp& x,
                                  const TruncationPolicy& policy = {}, double tolerance = 1e-6);
NumericReport qmf_omega_residual(const SumContext& ctx, const Mat2& g, const Cusp& x,
                                 const TruncationPolicy& policy = {}, double tolerance = 1e-6);

void to_json(nlohmann::json& j, const ExactReport& r);
void to_json(nlohmann::json& j, const NumericReport& r);

}  // namespace gds
