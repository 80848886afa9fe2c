#pragma once

#include "gkmtr/correlators.hpp"
#include "gkmtr/recursion.hpp"

namespace gkmtr {

// Coefficient of z^{-k-1} dz in the expansion of dz/(z - z^beta)^m at
// infinity: binom(k, m-1) beta^{k+1-m}.
Scalar leg_coeff_z(const SpectralCurve& C, int beta, int m, int k);

// z-mode boundary expansion of a leg-basis tensor into correlators
// <alpha_{k_1},...,alpha_{k_n}>^z_{g,n}, all k_i <= kmax.
void tr_correlators_z(const MultiDiff& md, const SpectralCurve& C, int kmax,
                      CorrelatorTable& out);

// Local coordinate lambda with lambda^r = x(z), branch lambda/z -> lead_root
// at infinity (lead_root^r = a_r).
struct LambdaChart {
  Scalar lead;        // A with A^r = a_r
  Series lam_of_z;    // series in 1/z, valuation -1
  Series z_of_lam;    // series in 1/lambda, valuation -1
  Series dz_dlam;     // series in 1/lambda
};
LambdaChart lambda_chart(const Poly& x, const Scalar& lead_root, int hi);

// Leg dz/(z - z^beta)^m re-expanded in lambda: series of coefficients of
// lambda^{-k-1} dlambda (entry at index k+1 in 1/lambda).
Series leg_series_lambda(const LambdaChart& L, const Scalar& zbeta, int m, int kmax);

// lambda-mode boundary expansion.
void tr_correlators_lambda(const MultiDiff& md, const SpectralCurve& C,
                           const LambdaChart& L, int kmax, CorrelatorTable& out);

// omega_{0,1} = y dx = r z(lambda) lambda^{r-1} dlambda expansion:
// polynomial part v_k (coefficients of lambda^{k-1} dlambda), the flat
// deformation parameters t^i, and the decaying tail.
struct MirrorMap {
  std::vector<Scalar> t;      // t^0..t^{r-1}
  std::vector<Scalar> v;      // v_0..v_r
  std::vector<Scalar> tail;   // tail[k] = <alpha_k> part of the (0,1) data
};
MirrorMap mirror_map(const SpectralCurve& C, const LambdaChart& L, int tailmax);

// Auxiliary differentials dzeta_k at a critical point.  The radical
// normalization factors out: dzeta_k = (1/sqrt(x''(z^beta))) R_k(z) dz with
// R_k rational over Q; R_0 = -1/(z - z^beta)^2 and R_{k+1} = -(R_k/x')'.
// Returned as a reduced (numerator, denominator) pair.
std::pair<Poly, Poly> doss_rational(const SpectralCurve& C, int beta, int k);

// Decomposition of omega_{g,1} over the dzeta system: solves
//   omega = sum_{beta,k} d_{beta,k} R_k^beta(z) dz  exactly over Q
// (the radical prefactors cancel against sqrt(x'')-normalized coefficients,
// so the reassembly is extension-free).  Returns the d-table; raises if the
// linear solve is inconsistent.
std::map<std::pair<int, int>, Rat> doss_decompose(const SpectralCurve& C,
                                                  const MultiDiff& omega1);

}  // namespace gkmtr
