#pragma once

#include "gkmtr/correlators.hpp"
#include "gkmtr/tau.hpp"

namespace gkmtr {

// eps-adic GKM for admissible deformed potentials V'' = U(z)/prod(1 - eps_i z):
// the polynomial machinery runs unchanged over the truncated ring, so this
// module only packages construction, the string-anomaly constant, and the
// section-6.3 Givental data.

struct DeformedRun {
  Potential P;
  BTable B;
  CorrelatorTable corr;
};

// wave/two-point/correlator pipeline at the given caps
DeformedRun deformed_pipeline(const Poly& U, const std::vector<int>& eps_syms,
                              const Ring* ring, int hmax, int kmax,
                              const std::vector<std::pair<int, int>>& gn_slices);

// anomaly constant f(eps, hbar) = sum_g f_g hbar^{2g-1} from the n = 0 string
// identity f_g = -<alpha_1>_{g,1}
std::vector<Scalar> anomaly_from_correlators(const CorrelatorTable& corr, int gmax);

// independent d=1 determination: Res_{z=inf} omega~_{0,2}(z,z)/dx computed
// eps-adically; f_1 = (1/2) * that, and in closed form eps/(24 U(1/eps)).
Scalar anomaly_residue_route(const Potential& P);
Scalar anomaly_closed_form_d1(const Poly& U, int eps_sym, const Ring* ring);

// Givental data read from the Bergman kernel and y-expansion in the adic
// lambda coordinate (lambda^r = x, lambda = z(1 + O(eps))).
struct GiventalData {
  int r = 2;
  int kcap = 0;
  // Q_{m,n} for m, n <= qcap
  std::vector<std::vector<Scalar>> Q;
  // V-matrix entries V^{a,b}_{k,l}, a,b in 0..r-2, k,l <= kcap
  Scalar V(int a, int b, int k, int l) const;
  std::map<std::tuple<int, int, int, int>, Scalar> v;
  // R-matrix coefficients R_k as (r-1)x(r-1) matrices, R_0 = I
  std::vector<std::vector<std::vector<Scalar>>> R;
  // T-vector entries T^a_k, k >= 1
  std::map<std::pair<int, int>, Scalar> T;
  // h_n coefficients of y(z) = z = sum h_n lambda^n
  std::vector<Scalar> h;
};

GiventalData givental_data(const Poly& U, const std::vector<int>& eps_syms,
                           const Ring* ring, int kcap);

// verification helpers
bool givental_v_symmetric(const GiventalData& G);
bool givental_r_relation(const GiventalData& G);   // (z+w)V = I - R*(-z)R(-w)
bool givental_r_symplectic(const GiventalData& G); // R*(-z) R(z) = I

}  // namespace gkmtr
