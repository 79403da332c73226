#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "gds/dedekind.hpp"

namespace gds {

using cplx = std::complex<double>;

struct TruncationPolicy {
  double tolerance = 1e-8;
  std::size_t n_max = 0;  // 0 picks the cutoff from the tail estimate
  std::size_t cap = 4'000'000;
};

struct SeriesInfo {
  std::size_t n_max = 0;
  double tail = 0;
};

cplx eisenstein_eval(const SumContext& ctx, cplx z, const TruncationPolicy& policy = {}, SeriesInfo* info = nullptr);

// integral of E(z) (Xz+Y)^{k-2} from i*infinity to w
cplx antiderivative(const SumContext& ctx, cplx w, cplx X, cplx Y, const TruncationPolicy& policy = {},
                    SeriesInfo* info = nullptr);
cplx antiderivative_segment(const SumContext& ctx, cplx s, cplx s2, cplx X, cplx Y, const TruncationPolicy& policy = {});

// omega^e * g with omega = [[0,-1],[N,0]] / sqrt(N) and g in Gamma_0(N)
struct ExtElement {
  bool omega = false;
  Mat2 g;
};

std::array<double, 4> real_matrix(const SumContext& ctx, const ExtElement& x);
// E | x = kappa * E', with E' the series of ctx or of ctx.swapped()
cplx slash_constant(const SumContext& ctx, const ExtElement& x, bool* swapped = nullptr);

cplx fricke_constant(const SumContext& ctx);  // R
cplx gauss_sum_c(const DirichletCharacter& chi);
cplx sum_prefactor(const SumContext& ctx);    // (-1)^k tau(conj chi1) (k-1)

// period of E P_{k-2}(.;X,Y) along the element; z1 = (i t - delta)/gamma
cplx period(const SumContext& ctx, const ExtElement& x, cplx X, cplx Y, const TruncationPolicy& policy = {},
            double t = 1.0);
cplx phi_numeric(const SumContext& ctx, const Mat2& g, cplx X, cplx Y, const TruncationPolicy& policy = {}, double t = 1.0);

// a cusp in the orbit of infinity or of 0; returns the element sending infinity to it
ExtElement cusp_witness(const SumContext& ctx, const Cusp& x);
cplx shat_numeric(const SumContext& ctx, const Cusp& x, const TruncationPolicy& policy = {});
// exact where available, numeric on the orbit of 0
cplx shat_value(const SumContext& ctx, const Cusp& x, const TruncationPolicy& policy = {});

}  // namespace gds
