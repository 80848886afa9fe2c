#pragma once

#include "gkmtr/curve.hpp"

#include <map>

namespace gkmtr {

// Multi-differential in the radical-free leg basis dz/(z - z^beta)^m,
// m >= 2, one (beta, m) pair per leg; coefficients Scalar.
struct MultiDiff {
  int g = 0, n = 0;
  using Key = std::vector<std::pair<int, int>>;  // per-leg (beta, order)
  std::map<Key, Scalar> c;

  int max_order() const;
  bool symmetric() const;  // exact permutation symmetry of the tensor
  // residue of the leg-l part at each critical point vanishes iff no order-1
  // legs exist, which holds by construction; provided for property tests
  bool no_simple_poles() const;
};

// Eynard-Orantin recursion on the curve, exact.  Memoized by (g, n);
// level-ordered internally.  U_max doubles automatically if a residue is not
// certified at the current window.
class TrEngine {
public:
  explicit TrEngine(SpectralCurve curve) : curve_(std::move(curve)) {}

  const SpectralCurve& curve() const { return curve_; }
  // omega_{g,n} for 2g-2+n > 0
  const MultiDiff& omega(int g, int n);
  // omega_{g,0} for g >= 2 via the primitive of y dx
  Scalar free_energy(int g);

  // Regularity checks (2g-2+n>0): omega(z,...) + omega(zbar,...) and the
  // 1/dx-divided combination are regular at every critical point; also the
  // omega_{0,2}(z,zbar)/dx + tilde-omega_{0,2}(z,z)/dx combination.
  bool regularity_check(int g, int n);
  bool regularity_check_bergman();

  // String-equation residue identities on the engine's own output:
  //   sum_beta Res 1/dx(z) omega_{0,2}(z,z1) omega_{0,2}(zbar,z2) matches the
  //   partial-fraction identity; the omega_{g,n} x Bergman term matches
  //   -d(omega/dx); the remaining quadratic terms have vanishing residues.
  bool string_residue_02();
  bool string_residue_gn(int g, int n, int leg_j);
  bool string_residue_vanishing(int g1, int n1, int g2, int n2);

private:
  SpectralCurve curve_;
  std::map<std::pair<int, int>, MultiDiff> memo_;
  MultiDiff compute(int g, int n1);
  MultiDiff try_compute(int g, int n1);
};

}  // namespace gkmtr
