#pragma once

#include "gkmtr/ratfun.hpp"

namespace gkmtr {

// Potential data for the matrix-model pipelines.
//
// Polynomial mode: V(z) a polynomial of degree >= 3, x = V'.
// Deformed mode:   V''(z) = U(z) / prod_i (1 - eps_i z) with eps_i nilpotent
//                  (truncated ring symbols); everything is expanded
//                  eps-adically, so V'' and all higher derivatives become
//                  polynomials over the truncated ring and x = V' is the
//                  antiderivative of V'' with x(0) = a0.
class Potential {
public:
  static Potential from_V(const Poly& V);
  static Potential deformed(const Poly& U, const std::vector<int>& eps_syms,
                            const Ring* ring);

  bool is_deformed() const { return deformed_; }
  int r() const { return r_; }                 // degree of x (eps^0 part)
  const Poly& V() const;                        // polynomial mode only
  const Poly& x() const { return x_; }          // V'
  const Poly& xprime() const { return der_[0]; }  // V''
  const Poly& deriv(int i) const;               // V^{(i)}, i >= 2
  int max_deriv() const;                        // largest i with V^{(i)} != 0
  Scalar a(int i) const { return x_.coeff(i); }

  // denominator bookkeeping: 1/V''^m = pole_poly^m / den_base^m
  const Poly& den_base() const { return den_base_; }
  const Poly& pole_poly() const { return pole_poly_; }
  RatFun inv_V2_pow(int m) const;
  RatFun one() const { return RatFun(Poly(Scalar(Rat(1)))); }
  // x''/x'^2 and 1/x' as tracked rational functions
  RatFun inv_xprime() const { return inv_V2_pow(1); }
  RatFun xsecond_over_xprime2() const;

  // Expansion 1/x'(z) = sum_m c_m z^{-m+1}: returns the series in t = 1/z
  // (coefficient of t^k is the coefficient of z^{-k}).
  Series inv_xprime_series(int hi) const;

  int pole_count() const { return static_cast<int>(eps_syms_.size()); }

private:
  Potential() = default;
  bool deformed_ = false;
  int r_ = 0;
  Poly v_;
  Poly x_;
  Poly den_base_;
  Poly pole_poly_;
  std::vector<Poly> der_;  // der_[i] = V^{(i+2)}
  std::vector<int> eps_syms_;
};

}  // namespace gkmtr
