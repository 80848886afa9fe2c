#pragma once

#include "gkmtr/twopoint.hpp"

#include <map>

namespace gkmtr {

// Connected correlators <alpha_{k1},...,alpha_{kn}>_{g,n}, stored with sorted
// index tuples (the table is symmetric by construction and by theorem).
class CorrelatorTable {
public:
  void set(int g, int n, std::vector<int> ks, Scalar v);
  // zero for any nonpositive index; raises beyond the certified range
  Scalar get(int g, int n, std::vector<int> ks) const;
  bool certified(int g, int n, int kmax) const;
  void mark_certified(int g, int n, int kmax);
  int certified_kmax(int g, int n) const;  // -1 if slice absent

  const std::map<std::tuple<int, int, std::vector<int>>, Scalar>& entries() const {
    return t_;
  }

private:
  std::map<std::tuple<int, int, std::vector<int>>, Scalar> t_;
  std::map<std::pair<int, int>, int> cert_;
};

// n-cycle formula on the two-point data: fills the (g,n) slice for all index
// tuples with every k_i <= kmax.  Requires the b-table to reach weight
// n*(kmax+1) - 2 at the contributing hbar-orders.
void connected_correlators(const Potential& P, const BTable& B, int g, int n, int kmax,
                           CorrelatorTable& out);

// omega_{g,n} = (-1)^n H_{g,n} dz_1...dz_n repackaging: coefficient of
// z_1^{-k_1-1}dz_1 ... z_n^{-k_n-1}dz_n.
Scalar omega_dz_coeff(const CorrelatorTable& T, int g, const std::vector<int>& ks);

struct StringCheckReport {
  bool ok = true;
  int g = -1, n = -1;
  std::vector<int> fail_ks;
};

// Correlator form of the string equation
//   <a_1, a_{k_1..k_n}>_{g,n+1} = delta^{(0,2)} k1 k2 c_{k1+k2}
//       + sum_m c_m sum_j k_j <... a_{k_j - m} ...>_{g,n}   (- delta_{n,0} f_g)
// with 1/x'(z) = sum c_m z^{-m+1}.  Verifies every certified tuple.
StringCheckReport string_equation_check(const Potential& P, const CorrelatorTable& T,
                                        int g, int n, int kmax,
                                        const Scalar* f_g = nullptr);

}  // namespace gkmtr
