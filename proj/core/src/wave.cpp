#include "gkmtr/wave.hpp"

namespace gkmtr {

Rat binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(b);
}

Rat double_factorial_odd(long m) {
  // (2m-1)!! for m >= 0
  mpz_class r = 1;
  for (long j = 2 * m - 1; j >= 3; j -= 2) r *= j;
  return Rat(r);
}

Rat factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(r);
}

WaveEntry WaveEntry::dual() const {
  WaveEntry d = *this;
  for (size_t m = 1; m < d.h.size(); m += 2) d.h[m] = -d.h[m];
  return d;
}

HSeries WaveEntry::expand(int zmax) const {
  HSeries out;
  out.reserve(h.size());
  for (const auto& rf : h) out.push_back(rf.expand_at_inf(zmax));
  return out;
}

namespace {

struct WickAccum {
  const Potential& P;
  int k;
  int hmax;
  std::vector<RatFun>& h;

  // one multiset of vertex orders: vertex polynomial product, v vertices,
  // total phi-count s from vertices
  void emit(const Poly& vf_poly, const Rat& vf_coeff, int v, int s) {
    for (int j = 0; j <= k - 1; ++j) {
      if ((j + s) % 2 != 0) continue;
      int m = (j + s) / 2;
      int n = m - v;  // hbar order
      if (n < 0) throw std::logic_error("negative hbar order in Wick term");
      if (n > hmax) continue;
      Rat c = binomial(k - 1, j) * double_factorial_odd(m) * vf_coeff;
      if (m % 2 != 0) c = -c;
      if (c == 0) continue;
      Poly num = vf_poly * Scalar(c);
      if (k - 1 - j > 0) num = num.shift(k - 1 - j);
      RatFun term = RatFun(std::move(num)) * P.inv_V2_pow(m);
      h[n] += term;
    }
  }

  void rec(int min_e, int budget, const Poly& vf_poly, const Rat& vf_coeff, int v, int s) {
    emit(vf_poly, vf_coeff, v, s);
    for (int e = min_e; e - 2 <= budget && e <= P.max_deriv(); ++e) {
      const Poly& de = P.deriv(e);
      if (de.is_zero()) continue;
      // extend the multiset with copies of vertex order e
      Poly p = vf_poly;
      Rat c = vf_coeff;
      int used = 0;
      for (int mult = 1; (e - 2) * mult <= budget; ++mult) {
        p = p * de;
        c /= factorial(e);  // vertex weight 1/e!
        c /= mult;          // running 1/mult!
        used = (e - 2) * mult;
        rec(e + 1, budget - used, p, c, v + mult, s + e * mult);
      }
    }
  }
};

}  // namespace

WaveEntry wave_function(const Potential& P, int k, int hmax) {
  if (k < 1) throw std::invalid_argument("wave index must be positive");
  WaveEntry w;
  w.k = k;
  w.h.assign(static_cast<size_t>(hmax) + 1, RatFun());
  WickAccum acc{P, k, hmax, w.h};
  acc.rec(3, 2 * hmax, Poly(Scalar(Rat(1))), Rat(1), 0, 0);
  return w;
}

WaveEntry apply_q(const Potential& P, const WaveEntry& psi, bool dual) {
  WaveEntry out;
  out.k = psi.k + 1;
  out.h.assign(psi.h.size(), RatFun());
  RatFun invxp = P.inv_xprime();
  RatFun xsx2 = P.xsecond_over_xprime2() * Scalar(Rat(1, 2));
  Poly z = Poly::z();
  Scalar sgn(Rat(dual ? -1 : 1));
  for (size_t m = 0; m < psi.h.size(); ++m) {
    RatFun t = RatFun(z) * psi.h[m];
    if (m >= 1) {
      t += (invxp * psi.h[m - 1].derivative()) * (-sgn);
      t += (xsx2 * psi.h[m - 1]) * sgn;
    }
    out.h[m] = t;
  }
  return out;
}

std::vector<RatFun> ks_residual(const Potential& P, const WaveEntry& psi, bool dual) {
  const Poly& x = P.x();
  std::vector<RatFun> acc(psi.h.size(), RatFun());
  WaveEntry t = psi;
  for (int i = 0; i <= x.degree(); ++i) {
    const Scalar& ai = x.coeff(i);
    if (i > 0) t = apply_q(P, t, dual);
    if (ai.is_zero()) continue;
    for (size_t m = 0; m < acc.size(); ++m) acc[m] += t.h[m] * ai;
  }
  RatFun xr = RatFun(x);
  for (size_t m = 0; m < acc.size(); ++m) acc[m] -= xr * psi.h[m];
  return acc;
}

KsReport kac_schwarz_check(const Potential& P, int hmax) {
  KsReport rep;
  WaveEntry psi = wave_function(P, 1, hmax);
  for (int pass = 0; pass < 2; ++pass) {
    bool dual = pass == 1;
    auto res = ks_residual(P, dual ? psi.dual() : psi, dual);
    for (size_t m = 0; m < res.size(); ++m) {
      if (!res[m].is_zero()) {
        rep.ok = false;
        rep.h_fail = static_cast<int>(m);
        return rep;
      }
    }
  }
  return rep;
}

HSeries ks_residual_series(const Potential& P, const HSeries& psi, int zmax, bool dual) {
  int pad = zmax + 3 * P.r() + 8;
  Series invxp = P.inv_xprime().expand_at_inf(pad);
  Series xsx2 = (P.xsecond_over_xprime2() * Scalar(Rat(1, 2))).expand_at_inf(pad);
  Series xs = expand_poly_at_inf(P.x(), pad);
  Scalar sgn(Rat(dual ? -1 : 1));
  auto d_dz = [](const Series& f) {
    // d/dz = -t^2 d/dt in t = 1/z
    return (f.dt() * Scalar(Rat(-1))).shifted(2);
  };
  auto apply = [&](const HSeries& f) {
    HSeries out(f.size());
    for (size_t m = 0; m < f.size(); ++m) {
      Series t = f[m].shifted(-1);  // z * f
      if (m >= 1) {
        t = t - invxp * d_dz(f[m - 1]) * sgn;
        t = t + xsx2 * f[m - 1] * sgn;
      }
      out[m] = t;
    }
    return out;
  };
  HSeries acc(psi.size());
  for (auto& s : acc) s = Series::zero_to(zmax);
  HSeries t = psi;
  const Poly& x = P.x();
  for (int i = 0; i <= x.degree(); ++i) {
    const Scalar& ai = x.coeff(i);
    if (i > 0) t = apply(t);
    if (ai.is_zero()) continue;
    for (size_t m = 0; m < acc.size(); ++m) acc[m] = acc[m] + t[m] * ai;
  }
  for (size_t m = 0; m < acc.size(); ++m) acc[m] = (acc[m] - xs * psi[m]).truncated(zmax);
  return acc;
}

QuantumCurveData quantum_curve_check(const Potential& P, int hmax) {
  QuantumCurveData qc;
  qc.report = kac_schwarz_check(P, hmax);
  qc.s0 = (Poly::z() * P.xprime()).integral();
  return qc;
}

}  // namespace gkmtr
