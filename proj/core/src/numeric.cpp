#include "gkmtr/numeric.hpp"

#include "gkmtr/wave.hpp"

#include <algorithm>

namespace gkmtr {

namespace {

// Laurent series over CNum with a hard window [lo, hi]
struct NS {
  int lo = 0, hi = -1;
  std::vector<CNum> c;  // c[i] ~ u^{lo+i}

  static NS zero(int lo, int hi) {
    NS s;
    s.lo = lo;
    s.hi = hi;
    s.c.assign(static_cast<size_t>(hi - lo + 1), CNum());
    return s;
  }
  CNum coeff(int k) const {
    if (k < lo || k > hi) return CNum();
    return c[k - lo];
  }
  void set(int k, const CNum& v) {
    if (k >= lo && k <= hi) c[k - lo] = v;
  }
};

NS ns_add(const NS& a, const NS& b) {
  NS r = NS::zero(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
  for (int k = r.lo; k <= r.hi; ++k) r.set(k, a.coeff(k) + b.coeff(k));
  return r;
}

NS ns_mul(const NS& a, const NS& b, int hi_cap) {
  NS r = NS::zero(a.lo + b.lo, hi_cap);
  for (int i = a.lo; i <= a.hi; ++i)
    for (int j = b.lo; j <= b.hi && i + j <= hi_cap; ++j)
      r.set(i + j, r.coeff(i + j) + a.coeff(i) * b.coeff(j));
  return r;
}

NS ns_scale(NS a, const CNum& s) {
  for (auto& v : a.c) v = v * s;
  return a;
}

// inverse given the exact valuation v (a.coeff(v) != 0 structurally)
NS ns_inverse(const NS& a, int v, int hi_cap) {
  CNum lead = a.coeff(v);
  NS r = NS::zero(-v, hi_cap);
  CNum linv = CNum(Rat(1)) / lead;
  r.set(-v, linv);
  for (int m = 1; m - v <= hi_cap; ++m) {
    CNum acc;
    for (int j = 1; j <= m; ++j) {
      CNum aj = a.coeff(v + j);
      CNum bm = r.coeff(-v + m - j);
      acc = acc + aj * bm;
    }
    r.set(-v + m, -(linv * acc));
  }
  return r;
}

NS ns_pow(const NS& a, int e, int hi_cap) {
  NS r = NS::zero(0, hi_cap);
  r.set(0, CNum(Rat(1)));
  for (int t = 0; t < e; ++t) r = ns_mul(r, a, hi_cap);
  return r;
}

}  // namespace

bool NumericTr::close(const CNum& a, const Rat& b, double rel_tol) {
  CNum d = a - CNum(b);
  mpf_class scale = a.abs2() + mpf_class(b) * mpf_class(b) + 1;
  return d.abs2() < mpf_class(rel_tol) * mpf_class(rel_tol) * scale;
}

NumericTr::NumericTr(const Poly& x, unsigned prec_bits) : prec_(prec_bits) {
  mpf_set_default_prec(prec_ + 64);
  for (int k = 0; k <= x.degree(); ++k) xc_.push_back(CNum(x.coeff(k).to_rational()));
  Poly xp = x.derivative();
  for (int k = 0; k <= xp.degree(); ++k) xpc_.push_back(CNum(xp.coeff(k).to_rational()));

  // Durand-Kerner for the roots of x'
  int d = static_cast<int>(xpc_.size()) - 1;
  CNum lead = xpc_.back();
  std::vector<CNum> monic(xpc_);
  for (auto& v : monic) v = v / lead;
  std::vector<CNum> rt(d);
  CNum seed(mpf_class(0.4), mpf_class(0.9));
  CNum p(Rat(1));
  for (int i = 0; i < d; ++i) {
    p = p * seed;
    rt[i] = p + CNum(Rat(i + 1)) * CNum(mpf_class(0.01), mpf_class(0.003));
  }
  auto eval = [&](const CNum& z) {
    CNum acc;
    for (size_t k = monic.size(); k-- > 0;) acc = acc * z + monic[k];
    return acc;
  };
  for (int it = 0; it < 500; ++it) {
    mpf_class worst = 0;
    for (int i = 0; i < d; ++i) {
      CNum den(Rat(1));
      for (int j = 0; j < d; ++j)
        if (j != i) den = den * (rt[i] - rt[j]);
      CNum delta = eval(rt[i]) / den;
      rt[i] = rt[i] - delta;
      worst = std::max(worst, mpf_class(delta.abs2()));
    }
    if (worst < mpf_class(1e-80)) break;
  }
  roots_ = rt;
  // ramification must be simple
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if ((rt[i] - rt[j]).abs2() < mpf_class(1e-40))
        throw std::domain_error("numeric backend: repeated critical point");
  build_local();
}

void NumericTr::build_local() {
  loc_.clear();
  const int W = umax_;
  for (const CNum& b : roots_) {
    Local L;
    L.z = b;
    // taylor shift of x at b
    std::vector<CNum> phi(xc_);
    size_t n = phi.size();
    std::vector<CNum> shifted(n);
    {
      std::vector<CNum> work = phi;
      for (size_t j = 0; j < n; ++j) {
        for (size_t k = n - 1; k-- > j;) work[k] = work[k] + work[k + 1] * b;
        shifted[j] = work[j];
      }
    }
    shifted[0] = CNum();
    if (n > 1) shifted[1] = CNum();  // x'(b) = 0
    NS phiu = NS::zero(0, W + 2);
    for (size_t k = 2; k < n; ++k) phiu.set(static_cast<int>(k), shifted[k]);

    // involution Newton: s0 = -u
    NS s = NS::zero(1, W);
    s.set(1, CNum(Rat(-1)));
    NS u = NS::zero(1, W);
    u.set(1, CNum(Rat(1)));
    auto eval_phi = [&](const NS& g) {
      NS acc = NS::zero(0, W + 2);
      for (int k = static_cast<int>(n) - 1; k >= 2; --k) {
        acc = ns_mul(acc, g, W + 2);
        NS cc = NS::zero(0, W + 2);
        cc.set(0, shifted[k]);
        acc = ns_add(acc, cc);
      }
      acc = ns_mul(acc, ns_mul(g, g, W + 2), W + 2);
      return acc;  // sum_{k>=2} shifted[k] g^k
    };
    NS phis_u = eval_phi(u);
    // derivative of phi
    std::vector<CNum> dphi(n > 0 ? n - 1 : 0);
    for (size_t k = 1; k < n; ++k) dphi[k - 1] = shifted[k] * CNum(Rat(static_cast<long>(k)));
    auto eval_dphi = [&](const NS& g) {
      NS acc = NS::zero(0, W + 2);
      for (int k = static_cast<int>(dphi.size()) - 1; k >= 0; --k) {
        acc = ns_mul(acc, g, W + 2);
        NS cc = NS::zero(0, W + 2);
        cc.set(0, dphi[k]);
        acc = ns_add(acc, cc);
      }
      return acc;
    };
    for (int it = 0; it < 40; ++it) {
      NS err = ns_add(eval_phi(s), ns_scale(phis_u, CNum(Rat(-1))));
      NS dp = eval_dphi(s);  // valuation 1
      NS corr = ns_mul(err, ns_inverse(dp, 1, W + 2), W);
      s = ns_add(s, ns_scale(corr, CNum(Rat(-1))));
    }
    L.invol.assign(W + 1, CNum());
    for (int k = 1; k <= W; ++k) L.invol[k] = s.coeff(k);
    L.sprime.assign(W + 1, CNum());
    for (int k = 0; k < W; ++k) L.sprime[k] = s.coeff(k + 1) * CNum(Rat(k + 1));

    // P = 1/((u - s) x'(b+u))
    NS xpu = NS::zero(0, W + 2);
    {
      std::vector<CNum> work(xpc_);
      size_t m = work.size();
      std::vector<CNum> sh(m);
      for (size_t j = 0; j < m; ++j) {
        for (size_t k = m - 1; k-- > j;) work[k] = work[k] + work[k + 1] * b;
        sh[j] = work[j];
      }
      sh[0] = CNum();  // x'(b) = 0
      for (size_t k = 0; k < m; ++k) xpu.set(static_cast<int>(k), sh[k]);
    }
    NS ums = ns_add(u, ns_scale(s, CNum(Rat(-1))));
    NS den = ns_mul(ums, xpu, W + 2);
    NS P = ns_inverse(den, 2, W);
    L.Pser.assign(W + 3, CNum());
    for (int k = -2; k <= W; ++k) L.Pser[k + 2] = P.coeff(k);
    loc_.push_back(std::move(L));
  }
}

const std::map<NumericTr::Key, CNum>& NumericTr::omega(int g, int n) {
  auto it = memo_.find({g, n});
  if (it != memo_.end()) return it->second;
  auto md = compute(g, n);
  return memo_.emplace(std::make_pair(g, n), std::move(md)).first->second;
}

std::map<NumericTr::Key, CNum> NumericTr::compute(int g, int n1) {
  const int n = n1 - 1;
  const int W = umax_;
  const int NB = static_cast<int>(roots_.size());
  std::map<Key, CNum> acc;
  auto slot_z = [&](int beta, int gamma, int m) {
    NS r = NS::zero(-m, W);
    if (beta == gamma) {
      r.set(-m, CNum(Rat(1)));
      return r;
    }
    CNum c0 = roots_[beta] - roots_[gamma];
    NS lin = NS::zero(0, W + m + 2);
    lin.set(0, c0);
    lin.set(1, CNum(Rat(1)));
    return ns_pow(ns_inverse(lin, 0, W + m + 2), m, W);
  };
  auto series_of = [&](const std::vector<CNum>& v, int lo) {
    NS r = NS::zero(lo, lo + static_cast<int>(v.size()) - 1);
    for (size_t i = 0; i < v.size(); ++i) r.c[i] = v[i];
    return r;
  };
  for (int beta = 0; beta < NB; ++beta) {
    const Local& cp = loc_[beta];
    NS s = series_of(cp.invol, 0);
    NS sp = series_of(cp.sprime, 0);
    NS P = series_of(cp.Pser, -2);
    auto slot_zbar = [&](int gamma, int m) {
      NS body;
      if (beta == gamma) {
        body = ns_pow(ns_inverse(s, 1, W + m + 2), m, W);
      } else {
        CNum c0 = roots_[beta] - roots_[gamma];
        NS base = s;
        base.set(0, base.coeff(0) + c0);
        body = ns_pow(ns_inverse(base, 0, W + m + 2), m, W);
      }
      return ns_mul(sp, body, W);
    };

    std::map<Key, NS> Wmap;
    auto addW = [&](const Key& ext, const NS& ser) {
      auto [it, fresh] = Wmap.try_emplace(ext, ser);
      if (!fresh) it->second = ns_add(it->second, ser);
    };
    NS u = NS::zero(1, W);
    u.set(1, CNum(Rat(1)));

    if (g >= 1) {
      if (g - 1 == 0 && n == 0) {
        NS d = ns_add(u, ns_scale(s, CNum(Rat(-1))));
        addW({}, ns_mul(sp, ns_pow(ns_inverse(d, 1, W + 4), 2, W), W));
      } else if (2 * (g - 1) - 2 + (n + 2) > 0) {
        for (const auto& [key, v] : omega(g - 1, n + 2)) {
          NS e1 = slot_z(beta, key[0].first, key[0].second);
          NS e2 = slot_zbar(key[1].first, key[1].second);
          Key ext(key.begin() + 2, key.end());
          addW(ext, ns_scale(ns_mul(e1, e2, W), v));
        }
      }
    }
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> I, J;
      for (int i = 0; i < n; ++i)
        ((mask >> i) & 1 ? I : J).push_back(i);
      for (int g1 = 0; g1 <= g; ++g1) {
        int g2 = g - g1;
        int nA = static_cast<int>(I.size()) + 1, nB = static_cast<int>(J.size()) + 1;
        if ((g1 == 0 && nA == 1) || (g2 == 0 && nB == 1)) continue;
        bool spA = (g1 == 0 && nA == 2), spB = (g2 == 0 && nB == 2);
        if (!spA && 2 * g1 - 2 + nA <= 0) continue;
        if (!spB && 2 * g2 - 2 + nB <= 0) continue;
        std::vector<std::pair<NS, Key>> FA, FB;
        auto build = [&](bool zbar, bool sp_flag, int gg, const std::vector<int>& pos,
                         std::vector<std::pair<NS, Key>>& out) {
          if (sp_flag) {
            for (int m = 0; m <= W; ++m) {
              NS ser;
              if (!zbar) {
                ser = NS::zero(m, W);
                ser.set(m, CNum(Rat(m + 1)));
              } else {
                ser = ns_scale(ns_mul(ns_pow(s, m, W), sp, W), CNum(Rat(m + 1)));
              }
              out.emplace_back(ser, Key{{beta, m + 2}});
            }
          } else {
            for (const auto& [key, v] : omega(gg, static_cast<int>(pos.size()) + 1)) {
              NS e = zbar ? slot_zbar(key[0].first, key[0].second)
                          : slot_z(beta, key[0].first, key[0].second);
              out.emplace_back(ns_scale(e, v), Key(key.begin() + 1, key.end()));
            }
          }
        };
        build(false, spA, g1, I, FA);
        build(true, spB, g2, J, FB);
        for (const auto& [sa, ea] : FA)
          for (const auto& [sb, eb] : FB) {
            Key ext(n, {-1, -1});
            for (size_t t = 0; t < I.size(); ++t) ext[I[t]] = ea[t];
            for (size_t t = 0; t < J.size(); ++t) ext[J[t]] = eb[t];
            addW(ext, ns_mul(sa, sb, W));
          }
      }
    }

    for (const auto& [ext, ws] : Wmap) {
      NS base = ns_scale(ns_mul(P, ws, W), CNum(Rat(1, 2)));
      for (int k = 1; k + base.lo <= -1; ++k) {
        NS kf = NS::zero(k, W);
        kf.set(k, CNum(Rat(1)));
        NS sk = ns_pow(s, k, W);
        kf = ns_add(kf, ns_scale(sk, CNum(Rat(-1))));
        NS prod = ns_mul(kf, base, 0);
        CNum res = prod.coeff(-1);
        if (res.abs2() < mpf_class(1e-70)) continue;
        Key key;
        key.push_back({beta, k + 1});
        for (const auto& e : ext) key.push_back(e);
        auto [it, fresh] = acc.try_emplace(key, res);
        if (!fresh) it->second = it->second + res;
      }
    }
  }
  return acc;
}

std::map<std::vector<int>, CNum> NumericTr::correlators_z(int g, int n, int kmax) {
  const auto& md = omega(g, n);
  std::map<std::vector<int>, CNum> out;
  auto leg = [&](int beta, int m, int k) {
    // binom(k, m-1) b^{k+1-m}
    if (k + 1 < m) return CNum();
    CNum c(binomial(k, m - 1));
    CNum b = roots_[beta];
    for (int t = 0; t < k + 1 - m; ++t) c = c * b;
    return c;
  };
  std::vector<int> ks(n, 1);
  for (;;) {
    CNum acc;
    for (const auto& [key, v] : md) {
      CNum term = v;
      for (int p = 0; p < n; ++p) term = term * leg(key[p].first, key[p].second, ks[p]);
      acc = acc + term;
    }
    if (n % 2 != 0) acc = -acc;
    out[ks] = acc;
    int i = n - 1;
    while (i >= 0 && ks[i] == kmax) --i;
    if (i < 0) break;
    ++ks[i];
    for (int j = i + 1; j < n; ++j) ks[j] = ks[i];
  }
  return out;
}

}  // namespace gkmtr
