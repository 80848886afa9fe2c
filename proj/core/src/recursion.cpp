#include "gkmtr/recursion.hpp"

#include "gkmtr/ratfun.hpp"

#include <algorithm>

namespace gkmtr {

namespace {

std::vector<int> sorted_positions(unsigned mask, int n) {
  std::vector<int> v;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) v.push_back(i);
  return v;
}

// expansion of 1/(z - z^gamma)^m at z = z^beta + u
Series slot_z(const SpectralCurve& C, int beta, int gamma, int m, int hi) {
  if (beta == gamma) return Series::monomial(Scalar(Rat(1)), -m, hi);
  Scalar c0 = C.crit()[beta].z - C.crit()[gamma].z;
  return inv_shifted_pow(c0, m, hi);
}

// expansion of dzbar/(zbar - z^gamma)^m at z = z^beta + u, as a du-density
Series slot_zbar(const SpectralCurve& C, int beta, int gamma, int m, int hi) {
  const CritPoint& cp = C.crit()[beta];
  Series body;
  if (beta == gamma) {
    body = cp.invol.truncated(hi + 2 * m).inverse().pow(m);
  } else {
    Scalar c0 = cp.z - C.crit()[gamma].z;
    Series base = Series::constant(c0, hi + m + 2) + cp.invol;
    body = base.truncated(hi + m + 2).inverse().pow(m);
  }
  return (cp.sprime * body).truncated(hi);
}

}  // namespace

int MultiDiff::max_order() const {
  int mo = 0;
  for (const auto& [key, v] : c)
    for (const auto& [b, m] : key) mo = std::max(mo, m);
  return mo;
}

bool MultiDiff::symmetric() const {
  for (const auto& [key, v] : c) {
    Key sorted = key;
    std::sort(sorted.begin(), sorted.end());
    Key perm = sorted;
    do {
      auto it = c.find(perm);
      Scalar other = it == c.end() ? Scalar() : it->second;
      if (!(other == v)) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return true;
}

bool MultiDiff::no_simple_poles() const {
  for (const auto& [key, v] : c)
    for (const auto& [b, m] : key)
      if (m < 2) return false;
  return true;
}

const MultiDiff& TrEngine::omega(int g, int n) {
  if (2 * g - 2 + n <= 0) throw std::invalid_argument("omega requires 2g-2+n > 0");
  auto it = memo_.find({g, n});
  if (it != memo_.end()) return it->second;
  MultiDiff md = compute(g, n);
  if (!md.symmetric()) throw std::logic_error("omega tensor is not symmetric");
  if (!md.no_simple_poles()) throw std::logic_error("omega has a simple pole at a critical point");
  return memo_.emplace(std::make_pair(g, n), std::move(md)).first->second;
}

MultiDiff TrEngine::compute(int g, int n1) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return try_compute(g, n1);
    } catch (const std::out_of_range&) {
      curve_.extend(curve_.umax() * 2);
    }
  }
  throw std::logic_error("topological recursion failed to certify residues");
}

MultiDiff TrEngine::try_compute(int g, int n1) {
  const int n = n1 - 1;  // externals
  MultiDiff out;
  out.g = g;
  out.n = n1;
  if (g == 0 && n1 == 1) throw std::invalid_argument("omega_{0,1} is initial data");

  const int NB = static_cast<int>(curve_.crit().size());
  const int hi = curve_.umax();
  std::map<MultiDiff::Key, Scalar> acc;

  for (int beta = 0; beta < NB; ++beta) {
    const CritPoint& cp = curve_.crit()[beta];
    // assemble W(u): map external assignment -> u-series
    std::map<MultiDiff::Key, Series> W;
    auto addW = [&](const MultiDiff::Key& ext, const Series& s) {
      auto [it, fresh] = W.try_emplace(ext, s);
      if (!fresh) it->second += s;
    };

    // (a) omega_{g-1, n+2}(z, zbar, externals)
    if (g >= 1) {
      if (g - 1 == 0 && n == 0) {
        // B(z, zbar) = s'(u)/(u - s)^2 du^2
        Series u = Series::monomial(Scalar(Rat(1)), 1, hi + 6);
        Series d = (u - cp.invol.truncated(hi + 6));
        addW({}, (cp.sprime * d.inverse().pow(2)).truncated(hi));
      } else if (2 * (g - 1) - 2 + (n + 2) > 0) {
        const MultiDiff& sub = omega(g - 1, n + 2);
        for (const auto& [key, v] : sub.c) {
          Series e1 = slot_z(curve_, beta, key[0].first, key[0].second, hi);
          Series e2 = slot_zbar(curve_, beta, key[1].first, key[1].second, hi);
          MultiDiff::Key ext(key.begin() + 2, key.end());
          addW(ext, (e1 * e2) * v);
        }
      }
    }

    // (b) Sigma': ordered splits (g1, I) x (g2, J)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      auto I = sorted_positions(mask, n);
      auto J = sorted_positions(~mask & ((1u << n) - 1), n);
      for (int g1 = 0; g1 <= g; ++g1) {
        int g2 = g - g1;
        int nA = static_cast<int>(I.size()) + 1;
        int nB2 = static_cast<int>(J.size()) + 1;
        if (g1 == 0 && nA == 1) continue;  // omega_{0,1} excluded
        if (g2 == 0 && nB2 == 1) continue;
        bool specialA = (g1 == 0 && nA == 2);
        bool specialB = (g2 == 0 && nB2 == 2);
        if (!specialA && 2 * g1 - 2 + nA <= 0) continue;
        if (!specialB && 2 * g2 - 2 + nB2 <= 0) continue;

        // factor lists: (series, external assignment over its positions)
        std::vector<std::pair<Series, MultiDiff::Key>> FA, FB;
        auto build_side = [&](bool zbar_side, bool special, int gg,
                              const std::vector<int>& pos,
                              std::vector<std::pair<Series, MultiDiff::Key>>& out_list) {
          if (special) {
            // omega_{0,2}(active, z_j): expand into z_j legs at this beta
            for (int m = 0; m <= hi; ++m) {
              Series s;
              if (!zbar_side) {
                s = Series::monomial(Scalar(Rat(m + 1)), m, hi);
              } else {
                s = (cp.invol.pow(m) * cp.sprime * Scalar(Rat(m + 1))).truncated(hi);
              }
              if (s.zero_within_window()) continue;
              MultiDiff::Key ext{{beta, m + 2}};
              out_list.emplace_back(std::move(s), std::move(ext));
            }
          } else {
            const MultiDiff& sub = omega(gg, static_cast<int>(pos.size()) + 1);
            for (const auto& [key, v] : sub.c) {
              Series e = zbar_side ? slot_zbar(curve_, beta, key[0].first, key[0].second, hi)
                                   : slot_z(curve_, beta, key[0].first, key[0].second, hi);
              MultiDiff::Key ext(key.begin() + 1, key.end());
              out_list.emplace_back(e * v, std::move(ext));
            }
          }
        };
        build_side(false, specialA, g1, I, FA);
        build_side(true, specialB, g2, J, FB);

        for (const auto& [sa, ea] : FA) {
          if (sa.zero_within_window()) continue;
          for (const auto& [sb, eb] : FB) {
            if (sb.zero_within_window()) continue;
            // merge external assignments in position order
            MultiDiff::Key ext(n, {-1, -1});
            for (size_t t = 0; t < I.size(); ++t) ext[I[t]] = ea[t];
            for (size_t t = 0; t < J.size(); ++t) ext[J[t]] = eb[t];
            addW(ext, sa * sb);
          }
        }
      }
    }

    // kernel extraction: coefficient of u^{-1} of (u^k - s^k)/2 * P * W
    for (const auto& [ext, ws] : W) {
      if (ws.zero_within_window()) continue;
      Series base = (cp.P * ws) * Scalar(Rat(1, 2));
      int val = base.valuation();
      for (int k = 1; k + val <= -1; ++k) {
        Series kf = Series::monomial(Scalar(Rat(1)), k, hi) - cp.invol.pow(k);
        Series prod = kf * base;
        if (prod.hi() < -1) throw std::out_of_range("residue not certified");
        Scalar res = prod.coeff_or_zero(-1);
        if (res.is_zero()) continue;
        MultiDiff::Key key;
        key.reserve(ext.size() + 1);
        key.push_back({beta, k + 1});
        for (const auto& e : ext) key.push_back(e);
        auto [it, fresh] = acc.try_emplace(std::move(key), res);
        if (!fresh) {
          it->second += res;
          if (it->second.is_zero()) acc.erase(it);
        }
      }
    }
  }
  out.c = std::move(acc);
  return out;
}

Scalar TrEngine::free_energy(int g) {
  if (g < 2) throw std::invalid_argument("free_energy needs g >= 2");
  const MultiDiff& w1 = omega(g, 1);
  Poly prim = (Poly::z() * curve_.xprime()).integral();  // primitive of y dx
  Scalar acc;
  for (const auto& [key, v] : w1.c) {
    int beta = key[0].first, m = key[0].second;
    const Scalar& b = curve_.crit()[beta].z;
    auto tp = prim.taylor_at(b);
    // Res_{z^beta} (prim(z) - prim(z^beta)) dz/(z-z^beta)^m = tp[m-1]
    if (m - 1 < static_cast<int>(tp.size())) acc += v * tp[m - 1];
  }
  return acc * Scalar(ratq(1, 2 - 2 * g));
}

bool TrEngine::regularity_check(int g, int n) {
  const MultiDiff& md = omega(g, n);
  const int hi = curve_.umax();
  for (int gamma = 0; gamma < static_cast<int>(curve_.crit().size()); ++gamma) {
    Series invxp = eval_poly(curve_.xprime(),
                             Series::constant(curve_.crit()[gamma].z, hi + 4) +
                                 Series::monomial(Scalar(Rat(1)), 1, hi + 4))
                       .truncated(hi + 4)
                       .inverse();
    // group by the remaining legs
    std::map<MultiDiff::Key, Series> sum, sum_dx;
    for (const auto& [key, v] : md.c) {
      Series e1 = slot_z(curve_, gamma, key[0].first, key[0].second, hi);
      Series e2 = slot_zbar(curve_, gamma, key[0].first, key[0].second, hi);
      MultiDiff::Key rest(key.begin() + 1, key.end());
      Series t = (e1 + e2) * v;
      auto [it, fresh] = sum.try_emplace(rest, t);
      if (!fresh) it->second += t;
      Series tdx = t * invxp;
      auto [it2, fresh2] = sum_dx.try_emplace(rest, tdx);
      if (!fresh2) it2->second += tdx;
    }
    for (auto& [rest, s] : sum)
      if (!s.zero_within_window() && s.valuation() < 0) return false;
    for (auto& [rest, s] : sum_dx)
      if (!s.zero_within_window() && s.valuation() < 0) return false;
  }
  return true;
}

bool TrEngine::regularity_check_bergman() {
  const int hi = curve_.umax();
  // (1/4) x''^2/x'^3 - (1/6) x'''/x'^2  (the diagonal-regularized Bergman/dx)
  Poly xp = curve_.xprime();
  Poly x2 = xp.derivative();
  Poly x3 = x2.derivative();
  RatFun diag = RatFun(x2 * x2 * Scalar(Rat(1, 4)), xp, 3) - RatFun(x3 * Scalar(Rat(1, 6)), xp, 2);
  for (int gamma = 0; gamma < static_cast<int>(curve_.crit().size()); ++gamma) {
    const CritPoint& cp = curve_.crit()[gamma];
    Series u = Series::monomial(Scalar(Rat(1)), 1, hi + 6);
    Series invxp = eval_poly(xp, Series::constant(cp.z, hi + 6) + u).truncated(hi + 6).inverse();
    Series bzzbar = (cp.sprime * (u - cp.invol.truncated(hi + 6)).inverse().pow(2)) * invxp;
    Series dd = diag.laurent_at(cp.z, bzzbar.hi());
    Series tot = bzzbar + dd;
    if (!tot.zero_within_window() && tot.valuation() < 0) return false;
  }
  return true;
}

bool TrEngine::string_residue_02() {
  // -sum_beta Res (1/dx) B(z,z1) B(zbar,z2) == sum_beta (1/x''(b)) legs
  // [(b,2),(b,2)], which is the partial-fraction form of
  // d1 d2 (x'(z1)-x'(z2)) / (x'(z1) x'(z2) (z1-z2)).
  const int hi = curve_.umax();
  std::map<MultiDiff::Key, Scalar> lhs;
  for (int beta = 0; beta < static_cast<int>(curve_.crit().size()); ++beta) {
    const CritPoint& cp = curve_.crit()[beta];
    Series invxp =
        eval_poly(curve_.xprime(), Series::constant(cp.z, hi + 4) + Series::monomial(Scalar(Rat(1)), 1, hi + 4))
            .truncated(hi + 4)
            .inverse();
    for (int m1 = 0; m1 <= hi; ++m1) {
      Series f1 = Series::monomial(Scalar(Rat(m1 + 1)), m1, hi);
      for (int m2 = 0; m2 <= hi; ++m2) {
        Series f2 = (cp.invol.pow(m2) * cp.sprime) * Scalar(Rat(m2 + 1));
        Series prod = f1 * f2 * invxp;
        if (prod.hi() < -1) throw std::out_of_range("string02 residue not certified");
        Scalar res = -prod.coeff_or_zero(-1);
        if (res.is_zero()) continue;
        MultiDiff::Key key{{beta, m1 + 2}, {beta, m2 + 2}};
        lhs[key] += res;
        if (lhs[key].is_zero()) lhs.erase(key);
      }
    }
  }
  // rhs
  std::map<MultiDiff::Key, Scalar> rhs;
  for (int beta = 0; beta < static_cast<int>(curve_.crit().size()); ++beta) {
    Scalar x2 = curve_.crit()[beta].x2_at;
    rhs[{{beta, 2}, {beta, 2}}] = x2.inverse();
  }
  // also verify the partial-fraction identity itself:
  // x'(z1)-x'(z2) == sum_b (1/x''(b)) (z1-z2) [x'(z1)/(z1-b)] [x'(z2)/(z2-b)]
  {
    const Poly& xp = curve_.xprime();
    // bivariate compare via coefficients of z2
    std::vector<Poly> lhs_w(2);
    // represent A(z1,z2) as vector over z2-powers of Poly(z1)
    int dmax = xp.degree() + 2;
    std::vector<Poly> A(static_cast<size_t>(dmax) + 1);
    for (int k = 0; k <= xp.degree(); ++k) {
      A[0] += Poly::monomial(xp.coeff(k), k);  // x'(z1)
      A[k] -= Poly(xp.coeff(k));               // -x'(z2): z2^k coefficient
    }
    std::vector<Poly> Bv(static_cast<size_t>(dmax) + 1);
    for (int beta = 0; beta < static_cast<int>(curve_.crit().size()); ++beta) {
      const Scalar& b = curve_.crit()[beta].z;
      Poly lin = Poly::z() - Poly(b);
      Poly q1 = Poly::divexact(xp, lin);
      Scalar inv2 = curve_.crit()[beta].x2_at.inverse();
      // (z1 - z2) q1(z1) q1(z2) / x''(b): z1 part times z2 part
      for (int k = 0; k <= q1.degree(); ++k) {
        const Scalar& c2 = q1.coeff(k);
        if (c2.is_zero()) continue;
        // term: [z1 q1(z1)] z2^k - [q1(z1)] z2^{k+1}
        Bv[k] += (Poly::z() * q1) * (c2 * inv2);
        Bv[k + 1] -= q1 * (c2 * inv2);
      }
    }
    for (size_t k = 0; k < A.size(); ++k)
      if (!(A[k] == Bv[k])) return false;
  }
  return lhs == rhs;
}

bool TrEngine::string_residue_gn(int g, int n, int leg_j) {
  // -sum_beta Res (1/dx) omega_{g,n}(z, rest) B(zbar, z_j) == -d(omega/dx(z_j))
  const MultiDiff& md = omega(g, n);
  const int hi = curve_.umax();
  std::map<MultiDiff::Key, Scalar> lhs, rhs;

  for (int beta = 0; beta < static_cast<int>(curve_.crit().size()); ++beta) {
    const CritPoint& cp = curve_.crit()[beta];
    Series invxp =
        eval_poly(curve_.xprime(), Series::constant(cp.z, hi + 4) + Series::monomial(Scalar(Rat(1)), 1, hi + 4))
            .truncated(hi + 4)
            .inverse();
    for (const auto& [key, v] : md.c) {
      Series e1 = slot_z(curve_, beta, key[0].first, key[0].second, hi) * v;
      for (int m2 = 0; m2 <= md.max_order() + 2; ++m2) {
        Series f2 = (cp.invol.pow(m2) * cp.sprime) * Scalar(Rat(m2 + 1));
        Series prod = e1 * f2 * invxp;
        if (prod.zero_within_window() || prod.valuation() > -1) continue;
        if (prod.hi() < -1) throw std::out_of_range("string gn residue not certified");
        Scalar res = -prod.coeff_or_zero(-1);
        if (res.is_zero()) continue;
        // output legs: rest of key (slots 1..) plus z_j leg (beta, m2+2)
        MultiDiff::Key out(key.begin() + 1, key.end());
        // insert z_j's leg at position leg_j
        out.insert(out.begin() + leg_j, {beta, m2 + 2});
        lhs[out] += res;
        if (lhs[out].is_zero()) lhs.erase(out);
      }
    }
  }

  // rhs: -d(omega/dx(z_j)) via partial fractions on the z_j leg
  std::vector<Scalar> poles;
  for (const auto& cpt : curve_.crit()) poles.push_back(cpt.z);
  const Poly& xp = curve_.xprime();
  Poly x2 = xp.derivative();
  for (const auto& [key, v] : md.c) {
    auto [gamma, m] = key[leg_j];
    // -d[ 1/((z-zg)^m x'(z)) ] = [m x' + (z-zg) x''] / ((z-zg)^{m+1} x'^2) dz
    Poly lin = Poly::z() - Poly(curve_.crit()[gamma].z);
    Poly num = xp * Scalar(Rat(m)) + lin * x2;
    Poly linm(Scalar(Rat(1)));
    for (int t = 0; t <= m; ++t) linm = linm * lin;
    Poly den = linm * xp * xp;
    auto pf = partial_fractions(num, den, poles);
    if (!pf.polynomial_part.is_zero()) return false;
    for (const auto& [bk, cval] : pf.terms) {
      MultiDiff::Key out(key.begin(), key.end());
      out.erase(out.begin() + leg_j);
      MultiDiff::Key out2;
      int pos = 0;
      for (int t = 0; t < static_cast<int>(out.size()) + 1; ++t) {
        if (t == leg_j) out2.push_back({static_cast<int>(bk.first), bk.second});
        else out2.push_back(out[pos++]);
      }
      Scalar add = v * cval;
      rhs[out2] += add;
      if (rhs[out2].is_zero()) rhs.erase(out2);
    }
  }
  return lhs == rhs;
}

bool TrEngine::string_residue_vanishing(int g1, int n1, int g2, int n2) {
  // sum_beta Res (1/dx) omega_{g1,n1}(z,-) omega_{g2,n2}(zbar,-) == 0
  const int hi = curve_.umax();
  std::map<MultiDiff::Key, Scalar> acc;
  const MultiDiff& ma = omega(g1, n1);
  const MultiDiff& mb = omega(g2, n2);
  for (int beta = 0; beta < static_cast<int>(curve_.crit().size()); ++beta) {
    const CritPoint& cp = curve_.crit()[beta];
    Series invxp =
        eval_poly(curve_.xprime(), Series::constant(cp.z, hi + 4) + Series::monomial(Scalar(Rat(1)), 1, hi + 4))
            .truncated(hi + 4)
            .inverse();
    for (const auto& [ka, va] : ma.c) {
      Series e1 = slot_z(curve_, beta, ka[0].first, ka[0].second, hi) * va;
      for (const auto& [kb, vb] : mb.c) {
        Series e2 = slot_zbar(curve_, beta, kb[0].first, kb[0].second, hi) * vb;
        Series prod = e1 * e2 * invxp;
        if (prod.valuation() > -1) continue;
        if (prod.hi() < -1) throw std::out_of_range("vanishing residue not certified");
        Scalar res = prod.coeff_or_zero(-1);
        if (res.is_zero()) continue;
        MultiDiff::Key out(ka.begin() + 1, ka.end());
        for (auto itb = kb.begin() + 1; itb != kb.end(); ++itb) out.push_back(*itb);
        acc[out] += res;
        if (acc[out].is_zero()) acc.erase(out);
      }
    }
  }
  // also the Bergman self-pairing piece
  for (int beta = 0; beta < static_cast<int>(curve_.crit().size()); ++beta) {
    const CritPoint& cp = curve_.crit()[beta];
    Series u = Series::monomial(Scalar(Rat(1)), 1, hi + 6);
    Series invxp =
        eval_poly(curve_.xprime(), Series::constant(cp.z, hi + 6) + u).truncated(hi + 6).inverse();
    Series b = cp.sprime * (u - cp.invol.truncated(hi + 6)).inverse().pow(2);
    Series prod = b * invxp;
    Scalar res = prod.coeff_or_zero(-1);
    if (!res.is_zero()) {
      MultiDiff::Key out;
      acc[out] += res;
      if (acc[out].is_zero()) acc.erase(out);
    }
  }
  return acc.empty();
}

}  // namespace gkmtr
