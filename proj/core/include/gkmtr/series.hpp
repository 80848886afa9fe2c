#pragma once

#include "gkmtr/poly.hpp"

#include <climits>

namespace gkmtr {

// Truncated Laurent series  sum_{k=lo..hi} c_k t^k  in a formal variable t.
// Coefficients below lo are exactly zero; coefficients above hi are unknown.
// hi == EXACT marks a series known in full (all higher coefficients zero).
// Every operation propagates the tightest valid window; reading an
// uncertified coefficient raises.
//
// Two orientations are used throughout: t = z^{-1} for expansions at infinity
// and t = u = z - z^beta for local expansions at a critical point.
class Series {
public:
  static constexpr int EXACT = INT_MAX / 4;

  Series() : lo_(0), hi_(EXACT) {}  // exact zero
  static Series zero_to(int hi) { Series s; s.hi_ = hi; return s; }
  static Series constant(Scalar c, int hi = EXACT);
  static Series monomial(Scalar c, int k, int hi = EXACT);
  // Polynomial in t, exact.
  static Series from_poly_in_t(const Poly& p);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool is_zero() const { return c_.empty(); }
  bool zero_within_window() const;

  const Scalar& coeff(int k) const;       // raises beyond hi
  Scalar coeff_or_zero(int k) const { return k > hi_ ? Scalar() : coeff(k); }
  int valuation() const;                   // smallest k with c_k != 0; hi_+1 if none

  Series truncated(int new_hi) const;
  Series shifted(int d) const;             // * t^d
  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Scalar& s);
  friend Series operator*(const Scalar& s, const Series& a) { return a * s; }
  Series& operator+=(const Series& o) { *this = *this + o; return *this; }
  Series& operator-=(const Series& o) { *this = *this - o; return *this; }
  Series& operator*=(const Series& o) { *this = *this * o; return *this; }

  // d/dt
  Series dt() const;
  // Multiplicative inverse; leading coefficient must be invertible.
  Series inverse() const;
  Series pow(long e) const;
  // exp(s) for s with valuation >= 1; log(1+s) likewise.
  Series exp0() const;
  Series log1p() const;
  // (1 + s)^(p/q) for s with valuation >= 1.
  Series pow_frac(const Rat& pq) const;
  // Composition f(g) for g with valuation >= 1.
  Series compose(const Series& g) const;
  // Reversion: for f = c1 t + ..., c1 invertible, returns g with f(g) = t.
  Series reversion() const;

  std::string str(const std::string& var = "t") const;

private:
  void normalize();
  int lo_;
  int hi_;
  std::vector<Scalar> c_;  // c_[i] is the coefficient of t^(lo_+i)
};

// Horner evaluation of a polynomial on a series argument (any valuation).
Series eval_poly(const Poly& p, const Series& g);

// k-th root of s = u t^v (1 + O(t)) with v divisible by k; the branch is
// fixed by the supplied leading root (lead_root^k must equal u).
Series kth_root_at_inf(const Series& s, int k, const Scalar& lead_root);
// Rational k-th root of a rational scalar, if one exists.
std::optional<Scalar> scalar_kth_root(const Scalar& s, int k);

// Expansion helpers in t = z^{-1}: poly(z) -> series, 1/poly, poly^(k)/poly^m.
Series expand_poly_at_inf(const Poly& p, int hi);
// Expansion of 1/p at infinity.  Requires an invertible "leading layer": the
// top z-degree coefficient is invertible, or the nilpotent-aware layering
// applies (deformation rings).
Series expand_inv_poly_at_inf(const Poly& p, int hi);

}  // namespace gkmtr
