#pragma once

#include "gkmtr/potential.hpp"

namespace gkmtr {

// Local data at a simple critical point z^beta of x, in u = z - z^beta:
//   invol:  s(u) with x(z^beta + s(u)) = x(z^beta + u), s = -u + O(u^2)
//   P:      1 / ((u - s(u)) * x'(z^beta + u)), Laurent with a double pole
struct CritPoint {
  Scalar z;
  Scalar x_at;
  Scalar x2_at;
  Series invol;
  Series sprime;
  Series P;
};

// Spectral curve (P^1, x polynomial, y = z) with exact rational critical
// data.  The eps-adic deformed case reuses this with x over a truncated ring;
// critical points are refined adically from the eps^0 roots.
class SpectralCurve {
public:
  // umax: certification order for the local series.
  static SpectralCurve build(const Poly& x, int umax);

  const Poly& x() const { return x_; }
  const Poly& xprime() const { return xp_; }
  int r() const { return x_.degree(); }
  int umax() const { return umax_; }
  const std::vector<CritPoint>& crit() const { return crit_; }
  void extend(int umax);  // recompute local series to a larger window

  // involution series for a given beta (convenience)
  const Series& invol(int beta) const { return crit_[beta].invol; }

private:
  Poly x_, xp_;
  int umax_ = 0;
  std::vector<Scalar> roots_;
  std::vector<CritPoint> crit_;
  void build_local(int umax);
};

// Newton refinement of a root of f in an eps-truncated ring starting from the
// eps^0 root.
Scalar refine_root_adic(const Poly& f, const Scalar& beta0);

// (c0 + u)^{-m} as a u-series (c0 invertible), certified through u^hi.
Series inv_shifted_pow(const Scalar& c0, int m, int hi);

}  // namespace gkmtr
