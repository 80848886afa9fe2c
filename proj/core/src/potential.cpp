#include "gkmtr/potential.hpp"

namespace gkmtr {

Potential Potential::from_V(const Poly& V) {
  if (V.degree() < 3)
    throw std::invalid_argument("potential degree must be greater than 2");
  Potential p;
  p.deformed_ = false;
  p.v_ = V;
  p.x_ = V.derivative();
  p.r_ = p.x_.degree();
  Poly d = p.x_.derivative();  // V''
  if (d.is_zero()) throw std::invalid_argument("V'' vanishes identically");
  p.den_base_ = d;
  p.pole_poly_ = Poly(Scalar(Rat(1)));
  while (!d.is_zero()) {
    p.der_.push_back(d);
    d = d.derivative();
  }
  return p;
}

Potential Potential::deformed(const Poly& U, const std::vector<int>& eps_syms,
                              const Ring* ring) {
  int r = U.degree() + 1;
  int d = static_cast<int>(eps_syms.size());
  if (r < 2) throw std::invalid_argument("deformed potential needs deg U >= 1");
  if (d > r)
    throw std::invalid_argument("inadmissible deformed potential: more than r pole factors");
  Potential p;
  p.deformed_ = true;
  p.r_ = r;
  p.eps_syms_ = eps_syms;
  p.den_base_ = U;
  Poly pole(Scalar(Rat(1)));
  for (int idx : eps_syms) {
    Poly f = Poly(Scalar(Rat(1))) - Poly::monomial(Scalar::symbol(ring, idx), 1);
    pole = pole * f;
  }
  p.pole_poly_ = pole;
  auto inv = pole.adic_inverse();
  if (!inv) throw std::invalid_argument("pole factors are not eps-adically invertible");
  Poly v2 = U * *inv;  // V'' as a truncated polynomial
  p.x_ = v2.integral();
  Poly dd = v2;
  while (!dd.is_zero()) {
    p.der_.push_back(dd);
    dd = dd.derivative();
  }
  return p;
}

const Poly& Potential::V() const {
  if (deformed_) throw std::logic_error("deformed potential has no polynomial V");
  return v_;
}

const Poly& Potential::deriv(int i) const {
  static const Poly zero;
  if (i < 2) throw std::invalid_argument("deriv defined for i >= 2");
  size_t idx = static_cast<size_t>(i - 2);
  return idx < der_.size() ? der_[idx] : zero;
}

int Potential::max_deriv() const { return static_cast<int>(der_.size()) + 1; }

RatFun Potential::inv_V2_pow(int m) const {
  if (m == 0) return one();
  Poly num(Scalar(Rat(1)));
  for (int k = 0; k < m; ++k) num = num * pole_poly_;
  return RatFun(std::move(num), den_base_, m);
}

RatFun Potential::xsecond_over_xprime2() const {
  // x'' / x'^2 = V''' * pole^2 / U^2
  return RatFun(deriv(3) * pole_poly_ * pole_poly_, den_base_, 2);
}

Series Potential::inv_xprime_series(int hi) const {
  return inv_xprime().expand_at_inf(hi);
}

}  // namespace gkmtr
