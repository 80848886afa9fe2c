#include "gkmtr/tau.hpp"

#include <algorithm>
#include <functional>

namespace gkmtr {

namespace {

using HPoly = std::vector<Scalar>;  // coefficients in hbar

HPoly hp_mul(const HPoly& a, const HPoly& b, int hmax) {
  HPoly r(static_cast<size_t>(hmax) + 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j + i <= static_cast<size_t>(hmax) && j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

HPoly hp_det(const std::vector<std::vector<HPoly>>& m, std::vector<int> rows,
             std::vector<int> cols, int hmax) {
  size_t d = rows.size();
  if (d == 1) return m[rows[0]][cols[0]];
  HPoly acc(static_cast<size_t>(hmax) + 1);
  for (size_t i = 0; i < d; ++i) {
    std::vector<int> sub(rows);
    sub.erase(sub.begin() + i);
    HPoly minor = hp_det(m, sub, std::vector<int>(cols.begin() + 1, cols.end()), hmax);
    HPoly term = hp_mul(m[rows[i]][cols[0]], minor, hmax);
    for (size_t h = 0; h < term.size(); ++h) {
      if (i % 2 == 0) acc[h] += term[h];
      else acc[h] -= term[h];
    }
  }
  return acc;
}

}  // namespace

std::vector<TPoly> tau_from_affine(const BTable& B, int tdeg_cap, int hmax) {
  std::vector<TPoly> tau(static_cast<size_t>(hmax) + 1);
  tau[0] += TPoly(Scalar(Rat(1)));  // empty partition, Z(0) = 1
  for (const auto& mu : partitions_up_to(tdeg_cap)) {
    std::vector<int> arms, legs;
    mu.frobenius(arms, legs);
    int d = static_cast<int>(arms.size());
    std::vector<std::vector<HPoly>> m(d, std::vector<HPoly>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (!B.in_range(arms[i], legs[j]))
          throw std::out_of_range("tau_from_affine: partition cap exceeds b-table");
        m[i][j] = B.hbar_poly(arms[i], legs[j]);
      }
    std::vector<int> rows(d), cols(d);
    for (int i = 0; i < d; ++i) rows[i] = cols[i] = i;
    HPoly det = hp_det(m, rows, cols, hmax);
    int legsum = 0;
    for (int l : legs) legsum += l;
    bool negate = (d + legsum) % 2 != 0;
    TPoly smu = schur(mu);
    for (int h = 0; h <= hmax; ++h) {
      if (det[h].is_zero()) continue;
      tau[h] += smu * (negate ? -det[h] : det[h]);
    }
  }
  return tau;
}

HSeries tau_wave_specialization(const std::vector<TPoly>& tau, int zmax) {
  std::vector<Series> tvals;
  for (int k = 1; k <= 16; ++k)
    tvals.push_back(Series::monomial(Scalar(Rat(-1, k)), k, zmax));
  HSeries out;
  out.reserve(tau.size());
  for (const auto& t : tau) out.push_back(t.eval_series(tvals).truncated(zmax));
  return out;
}

HirotaReport hirota_check(const std::vector<TPoly>& tau, const Poly& x, int kpow,
                          int deg_cap, int hmax, int weight_complete) {
  HirotaReport rep;
  // x(z)^kpow
  Poly xk(Scalar(Rat(1)));
  for (int t = 0; t < kpow; ++t) xk = xk * x;

  // shift expansions tau(T -+ [z^-1]): list of (reduced mono, z-drop w, h, coeff)
  struct ShiftTerm {
    TMono m;
    int w;
    int h;
    Scalar c;
  };
  auto expand_shifts = [&](bool minus) {
    std::vector<ShiftTerm> out;
    for (int h = 0; h < static_cast<int>(tau.size()) && h <= hmax; ++h) {
      for (const auto& [mono, coeff] : tau[h].terms()) {
        // enumerate drops d_k <= e_k per index
        std::vector<std::pair<int, int>> ks;  // (index, exponent)
        for (int k = 1; k <= 16; ++k)
          if (tmono_exp(mono, k)) ks.push_back({k, static_cast<int>(tmono_exp(mono, k))});
        std::function<void(size_t, TMono, int, Rat)> rec = [&](size_t pos, TMono m, int w, Rat c) {
          if (pos == ks.size()) {
            if (tmono_degree(m) <= deg_cap)  // higher degrees cannot reach capped outputs
              out.push_back({m, w, h, coeff * Scalar(c)});
            return;
          }
          auto [k, e] = ks[pos];
          Rat fac = 1;  // running binomial(e,d) (-+1/k)^d for this index
          for (int d = 0; d <= e; ++d) {
            if (d > 0) fac = fac * Rat(e - d + 1) / Rat(d) * (minus ? ratq(-1, k) : Rat(1, k));
            TMono sub = m;
            // remove d copies of T_k
            sub &= ~(uint64_t(0xf) << (4 * (k - 1)));
            sub |= static_cast<uint64_t>(e - d) << (4 * (k - 1));
            rec(pos + 1, sub, w + k * d, c * fac);
          }
        };
        rec(0, mono, 0, Rat(1));
      }
    }
    return out;
  };
  auto sh_minus = expand_shifts(true);
  auto sh_plus = expand_shifts(false);

  // residue accumulation
  std::map<std::tuple<TMono, TMono, int>, Scalar> res;
  int wmax_pair = 2 * weight_complete;
  for (const auto& s1 : sh_minus) {
    for (const auto& s2 : sh_plus) {
      int h = s1.h + s2.h;
      if (h > hmax) continue;
      if (tmono_degree(s1.m) + tmono_degree(s2.m) > deg_cap) continue;
      Scalar c12 = s1.c * s2.c;
      if (c12.is_zero()) continue;
      for (int s = 0; s <= xk.degree(); ++s) {
        const Scalar& xs = xk.coeff(s);
        if (xs.is_zero()) continue;
        int A = s1.w + s2.w - 1 - s;  // required z-power from e^xi
        if (A < 0) continue;
        if (A > wmax_pair + xk.degree()) continue;
        Scalar cc = c12 * xs;
        // enumerate xi-monomials of weight A: multisets a_k, coefficient
        // prod 1/a_k!, then split (T_k - T'_k)^{a_k}
        int degroom = deg_cap - tmono_degree(s1.m) - tmono_degree(s2.m);
        std::function<void(int, int, int, TMono, TMono, Rat)> xi =
            [&](int k, int left, int room, TMono mt, TMono mtp, Rat c) {
              if (left == 0) {
                TMono m1 = tmono_mul(s1.m, mt);
                TMono m2 = tmono_mul(s2.m, mtp);
                Scalar v = cc * Scalar(c);
                auto key = std::make_tuple(m1, m2, h);
                auto it = res.find(key);
                if (it == res.end()) res.emplace(key, -v);  // Res_inf = -[z^-1]
                else {
                  it->second -= v;
                  if (it->second.is_zero()) res.erase(it);
                }
                return;
              }
              if (k > 16 || k > left || room == 0) return;
              xi(k + 1, left, room, mt, mtp, c);
              // a_k copies of z^k: split b to T, a-b to -T'
              Rat fk = 1;
              for (int a = 1; a * k <= left && a <= room; ++a) {
                fk /= a;  // running 1/a!
                // split the a copies
                for (int b = 0; b <= a; ++b) {
                  if (left - a * k == 0 || true) {
                    Rat cb = binomial(a, b);
                    if ((a - b) % 2 != 0) cb = -cb;
                    TMono nmt = mt, nmtp = mtp;
                    bool ok = true;
                    try {
                      if (b) nmt = tmono_mul(nmt, tmono_of(k, b));
                      if (a - b) nmtp = tmono_mul(nmtp, tmono_of(k, a - b));
                    } catch (const std::exception&) {
                      ok = false;
                    }
                    if (ok) xi(k + 1, left - a * k, room - a, nmt, nmtp, c * fk * cb);
                  }
                }
              }
            };
        if (A == 0) {
          xi(17, 0, degroom, 0, 0, Rat(1));
        } else {
          if (degroom > 0) xi(1, A, degroom, 0, 0, Rat(1));
        }
      }
    }
  }

  for (const auto& [key, v] : res) {
    if (!v.is_zero()) {
      rep.ok = false;
      rep.t_fail = std::get<0>(key);
      rep.tp_fail = std::get<1>(key);
      rep.h_fail = std::get<2>(key);
      return rep;
    }
  }
  return rep;
}

}  // namespace gkmtr
