#pragma once

#include "gkmtr/expand.hpp"

namespace gkmtr {

// Scalar-ring bookkeeping for the r-spin extraction: S with S^2 = -r and
// A with A^r = a_r; all Gamma-ratios are Pochhammer products.
struct RSpinConvention {
  int r = 2;
  const Ring* ring = nullptr;
  Scalar A;  // a_r^{1/r}
  Scalar S;  // sqrt(-r)

  static RSpinConvention make(int r, const Rat& a_r);
  // P(i,n) = prod_{m=0}^{n} ((i+1)/r + m)
  Rat pochhammer_full(int i, int n) const;
  // prod_{m=0}^{n-1} ((i+1)/r + m)  (the chi-function factor)
  Rat pochhammer_chi(int i, int n) const;
};

// (g, n, multiset of (i, k)): phi_i psi^k insertions; values must reduce to Q.
class RSpinTable {
public:
  using Ins = std::vector<std::pair<int, int>>;
  void set(int g, Ins ins, Rat v);
  Rat get(int g, Ins ins) const;  // zero when absent
  const std::map<std::pair<int, Ins>, Rat>& entries() const { return t_; }

private:
  std::map<std::pair<int, Ins>, Rat> t_;
};

// dimension condition sum_j (i_j/r + k_j - 1) = (2 + 2/r)(g - 1)
bool rspin_dimension_ok(int r, int g, const RSpinTable::Ins& ins);

// chi-route: per-leg division by the d(chi_k^i) data of the Theorem-2 proof.
// lambda_corrs must hold the (g,n) slice with alpha-indices through
// r*kpsi_max + r - 1.  Raises if a lambda-coefficient sits in the forbidden
// (j = r-1) channel or an entry fails to reduce to Q.
RSpinTable extract_rspin_chi(const CorrelatorTable& lambda_corrs,
                             const RSpinConvention& conv, int g, int n, int kpsi_max);

// relabeling route via the descendent coordinate change (pure potentials):
// same input and caps, independent factor bookkeeping.
RSpinTable extract_rspin_relabel(const CorrelatorTable& lambda_corrs,
                                 const RSpinConvention& conv, int g, int n, int kpsi_max);

// re-expand a z-mode correlator slice in the lambda coordinate
void gkm_to_lambda(const CorrelatorTable& zc, int g, int n, const LambdaChart& L,
                   int mmax, CorrelatorTable& out);

// Checks for the pure potential V = z^{r+1}/(r(r+1)) (or any pure x = a_r z^r):
//  (i) decoupling: correlators with any index divisible by r vanish;
// (ii) the r-spin string equation on an extracted table.
bool rspin_decoupling_check(const CorrelatorTable& zc, int r, int g, int n, int kmax);
struct RSpinStringReport {
  bool ok = true;
  int g = -1;
  RSpinTable::Ins fail;
};
RSpinStringReport rspin_string_check(const RSpinTable& T, const RSpinConvention& conv,
                                     int g, int n, int kpsi_max);

}  // namespace gkmtr
