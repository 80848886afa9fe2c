#include "gkmtr/curve.hpp"

namespace gkmtr {

Scalar refine_root_adic(const Poly& f, const Scalar& beta0) {
  const Ring* ring = nullptr;
  for (const auto& c : f.coeffs())
    if (c.ring()) ring = c.ring();
  Scalar b = beta0;
  Poly fp = f.derivative();
  unsigned iters = ring ? ring->trunc_total() + 1 : 1;
  for (unsigned it = 0; it < iters; ++it) {
    Scalar val = f.eval(b);
    if (val.is_zero()) return b;
    b -= val * fp.eval(b).inverse();
  }
  if (!f.eval(b).is_zero()) throw std::domain_error("adic root refinement failed");
  return b;
}

Series inv_shifted_pow(const Scalar& c0, int m, int hi) {
  Series lin = Series::constant(c0, hi) + Series::monomial(Scalar(Rat(1)), 1, hi);
  Series inv = lin.inverse();
  Series out = Series::constant(Scalar(Rat(1)), hi);
  for (int t = 0; t < m; ++t) out = out * inv;
  return out.truncated(hi);
}

SpectralCurve SpectralCurve::build(const Poly& x, int umax) {
  if (x.degree() < 2) throw std::invalid_argument("spectral curve needs deg x >= 2");
  SpectralCurve c;
  c.x_ = x;
  c.xp_ = x.derivative();

  // roots of x' over Q, from the truncation-free layer when deformed
  const Ring* ring = nullptr;
  for (const auto& s : c.xp_.coeffs())
    if (s.ring()) ring = s.ring();
  std::vector<int> trunc_syms;
  if (ring)
    for (size_t i = 0; i < ring->symbols().size(); ++i)
      if (ring->symbols()[i].kind == SymKind::Truncated) trunc_syms.push_back(static_cast<int>(i));
  Poly xp0 = c.xp_;
  if (!trunc_syms.empty()) {
    std::vector<Scalar> cs;
    for (const auto& s : c.xp_.coeffs()) {
      Scalar v = s;
      for (int idx : trunc_syms) v = v.coeff_of(idx, 0);
      cs.push_back(v);
    }
    xp0 = Poly(std::move(cs));
  }
  auto roots = xp0.rational_roots_simple();
  if (!roots)
    throw std::domain_error(
        "x' does not split with simple roots over Q; use the numeric backend");
  std::sort(roots->begin(), roots->end());
  for (const auto& q : *roots) {
    Scalar b(q);
    if (!trunc_syms.empty()) b = refine_root_adic(c.xp_, b);
    c.roots_.push_back(b);
  }
  c.build_local(umax);
  return c;
}

void SpectralCurve::extend(int umax) {
  if (umax <= umax_) return;
  build_local(umax);
}

void SpectralCurve::build_local(int umax) {
  umax_ = umax;
  crit_.clear();
  for (const Scalar& b : roots_) {
    CritPoint cp;
    cp.z = b;
    cp.x_at = x_.eval(b);
    // phi(u) = x(z^beta + u) - x(z^beta) = sum_{m>=2} phi_m u^m
    Poly phi(std::vector<Scalar>(x_.taylor_at(b)));
    {
      auto cs = phi.coeffs();
      if (!cs.empty()) cs[0] = Scalar();
      if (cs.size() > 1 && !cs[1].is_zero())
        throw std::logic_error("critical point is not critical");
      phi = Poly(std::move(cs));
    }
    cp.x2_at = phi.coeff(2) * Scalar(Rat(2));
    if (cp.x2_at.is_zero()) throw std::domain_error("degenerate ramification: x''(z^beta)=0");

    // Newton for s(u): phi(s) = phi(u), s = -u + O(u^2)
    Series u = Series::monomial(Scalar(Rat(1)), 1, umax);
    Series phi_u = eval_poly(phi, u).truncated(umax + 2);
    Series s = Series::monomial(Scalar(Rat(-1)), 1, umax);
    Poly phi_p = phi.derivative();
    for (int it = 0; it < 64; ++it) {
      Series err = eval_poly(phi, s).truncated(umax + 2) - phi_u;
      if (err.zero_within_window()) break;
      Series dp = eval_poly(phi_p, s);  // valuation 1
      s = (s - err * dp.inverse()).truncated(umax);
    }
    if (!(eval_poly(phi, s).truncated(umax + 1) - phi_u).zero_within_window())
      throw std::logic_error("involution Newton iteration failed");
    cp.invol = s;
    cp.sprime = s.dt();

    // P(u) = 1 / ((u - s) x'(z^beta + u))
    Series xp_u = eval_poly(xp_, Series::constant(b, umax + 2) + Series::monomial(Scalar(Rat(1)), 1, umax + 2));
    Series denom = (u - s) * xp_u;
    cp.P = denom.inverse();
    crit_.push_back(std::move(cp));
  }
}

}  // namespace gkmtr
