#pragma once

#include "gkmtr/correlators.hpp"
#include "gkmtr/tpoly.hpp"

namespace gkmtr {

// Z(T;hbar) = sum_mu C_mu S_mu(T), C_mu = (-1)^{d + sum n_i} det(b_{m_i,n_j}),
// over all partitions with |mu| <= tdeg_cap; Z(0) = 1.  Graded by hbar-order.
// Raises if a needed Frobenius hook lies outside the b-table.
std::vector<TPoly> tau_from_affine(const BTable& B, int tdeg_cap, int hmax);

// Specialization T_k = -z^{-k}/k reproducing the wave function Psi(z).
HSeries tau_wave_specialization(const std::vector<TPoly>& tau, int zmax);

struct HirotaReport {
  bool ok = true;
  int h_fail = -1;
  TMono t_fail = 0, tp_fail = 0;
};

// Truncated Hirota quadratic equations with the x-reduction insertion:
//   Res_{z=inf} x(z)^kpow e^{xi(T - T', z)} tau(T - [z^-1]) tau(T' + [z^-1]) dz = 0.
// Checks every (T, T')-monomial of total degree <= deg_cap at hbar-order <=
// hmax.  tau must contain all monomials of T-weight <= weight_complete per
// hbar-order (pass the bound used for tau_from_affine).
HirotaReport hirota_check(const std::vector<TPoly>& tau, const Poly& x, int kpow,
                          int deg_cap, int hmax, int weight_complete);

}  // namespace gkmtr
