#include "gkmtr/rspin.hpp"

#include "gkmtr/wave.hpp"

#include <algorithm>
#include <functional>

namespace gkmtr {

RSpinConvention RSpinConvention::make(int r, const Rat& a_r) {
  RSpinConvention c;
  c.r = r;
  c.ring = Ring::make({{"A", SymKind::PowerRoot, static_cast<unsigned>(r), a_r},
                       {"S", SymKind::PowerRoot, 2, Rat(-r)}});
  c.A = Scalar::symbol(c.ring, 0);
  c.S = Scalar::symbol(c.ring, 1);
  return c;
}

Rat RSpinConvention::pochhammer_full(int i, int n) const {
  Rat p = 1;
  for (int m = 0; m <= n; ++m) p *= ratq(i + 1 + m * r, r);
  return p;
}

Rat RSpinConvention::pochhammer_chi(int i, int n) const {
  Rat p = 1;
  for (int m = 0; m < n; ++m) p *= ratq(i + 1 + m * r, r);
  return p;
}

void RSpinTable::set(int g, Ins ins, Rat v) {
  std::sort(ins.begin(), ins.end());
  t_[{g, std::move(ins)}] = std::move(v);
}

Rat RSpinTable::get(int g, Ins ins) const {
  std::sort(ins.begin(), ins.end());
  auto it = t_.find({g, ins});
  return it == t_.end() ? Rat(0) : it->second;
}

bool rspin_dimension_ok(int r, int g, const RSpinTable::Ins& ins) {
  // sum (i_j + r k_j - r) == (2r + 2)(g - 1)
  long lhs = 0;
  for (const auto& [i, k] : ins) lhs += i + r * k - r;
  return lhs == static_cast<long>(2 * r + 2) * (g - 1);
}

namespace {

// shared tuple enumeration: weakly increasing (i, k) insertions with
// k <= kpsi_max and i in 0..r-2
template <typename Fn>
void for_each_insertion_tuple(int r, int n, int kpsi_max, Fn fn) {
  std::vector<std::pair<int, int>> ins(n, {0, 0});
  auto leq = [](const std::pair<int, int>& a, const std::pair<int, int>& b) {
    return a <= b;
  };
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      fn(ins);
      return;
    }
    for (int k = 0; k <= kpsi_max; ++k)
      for (int i = 0; i <= r - 2; ++i) {
        std::pair<int, int> cand{i, k};
        if (pos > 0 && !leq(ins[pos - 1], cand)) continue;
        ins[pos] = cand;
        rec(pos + 1);
      }
  };
  rec(0);
}

}  // namespace

RSpinTable extract_rspin_chi(const CorrelatorTable& lambda_corrs,
                             const RSpinConvention& conv, int g, int n, int kpsi_max) {
  RSpinTable out;
  const int r = conv.r;
  // forbidden channel: lambda-exponents congruent to 0 mod r (j = r-1 slot)
  {
    int kmax_alpha = lambda_corrs.certified_kmax(g, n);
    std::vector<int> ks(n, 1);
    std::function<void(int, bool)> scan = [&](int pos, bool has_forbidden) {
      if (pos == n) {
        if (!has_forbidden) return;
        Scalar v = lambda_corrs.get(g, n, ks);
        if (!v.is_zero())
          throw std::domain_error("lambda-correlator in the forbidden r | k channel");
        return;
      }
      for (int k = (pos ? ks[pos - 1] : 1); k <= kmax_alpha; ++k) {
        ks[pos] = k;
        scan(pos + 1, has_forbidden || (k % r == 0));
      }
    };
    scan(0, false);
  }

  // (A S)^{2g-2+n} prefactor
  Scalar pref = (conv.A * conv.S).pow(2 * g - 2 + n);
  for_each_insertion_tuple(conv.r, n, kpsi_max, [&](const RSpinTable::Ins& ins) {
    std::vector<int> ks(n);
    Scalar denom = Scalar(Rat(1));
    for (int l = 0; l < n; ++l) {
      auto [i, k] = ins[l];
      int m = r * k + i + 1;
      ks[l] = m;
      // c_l * m_l with chi_k^i = -((-1)^k/S) Poch_chi(i,k) lambda^{-m}
      Scalar cl = conv.S.inverse() * Scalar(conv.pochhammer_chi(i, k) * Rat(m));
      cl = -cl;
      if (k % 2 != 0) cl = -cl;
      denom = denom * cl;
    }
    Scalar alpha = lambda_corrs.get(g, n, ks);
    if (alpha.ring() == nullptr) alpha = Scalar::with_ring(conv.ring, alpha.rational_part());
    Scalar val = alpha * pref.inverse() * denom.inverse();
    if (val.is_zero()) return;
    out.set(g, ins, val.to_rational());  // raises unless extension symbols cancel
  });
  return out;
}

RSpinTable extract_rspin_relabel(const CorrelatorTable& lambda_corrs,
                                 const RSpinConvention& conv, int g, int n, int kpsi_max) {
  RSpinTable out;
  const int r = conv.r;
  Scalar pref = (conv.A * conv.S).pow(2 * g - 2 + n);
  for_each_insertion_tuple(conv.r, n, kpsi_max, [&](const RSpinTable::Ins& ins) {
    std::vector<int> ks(n);
    Scalar denom = Scalar(Rat(1));
    for (int l = 0; l < n; ++l) {
      auto [i, k] = ins[l];
      ks[l] = r * k + i + 1;
      // t_k^i(T) = sqrt(-r) (-1)^k P(i,k) T_{rk+i+1}
      Scalar fl = conv.S * Scalar(conv.pochhammer_full(i, k));
      if (k % 2 != 0) fl = -fl;
      denom = denom * fl;
    }
    Scalar alpha = lambda_corrs.get(g, n, ks);
    if (alpha.ring() == nullptr) alpha = Scalar::with_ring(conv.ring, alpha.rational_part());
    Scalar val = alpha * pref.inverse() * denom.inverse();
    if (val.is_zero()) return;
    out.set(g, ins, val.to_rational());
  });
  return out;
}

void gkm_to_lambda(const CorrelatorTable& zc, int g, int n, const LambdaChart& L,
                   int mmax, CorrelatorTable& out) {
  int kz = zc.certified_kmax(g, n);
  if (kz < mmax) throw std::out_of_range("z-mode slice too short for lambda re-expansion");
  // M[k][m]: z^{-k-1}dz = sum_m M[k][m] lambda^{-m-1} dlambda
  std::vector<std::vector<Scalar>> M(static_cast<size_t>(mmax) + 1,
                                     std::vector<Scalar>(static_cast<size_t>(mmax) + 1));
  Series zi = L.z_of_lam.truncated(mmax + 4);
  for (int k = 1; k <= mmax; ++k) {
    Series f = zi.truncated(mmax + 3).inverse().pow(k + 1) * L.dz_dlam;
    for (int m = k; m <= mmax; ++m) M[k][m] = f.coeff_or_zero(m + 1);
  }
  // transform each tuple
  std::map<std::vector<int>, Scalar> acc;
  for (const auto& [key, v] : zc.entries()) {
    auto& [gg, nn, ks] = key;
    if (gg != g || nn != n) continue;
    bool in_range = true;
    for (int k : ks) in_range = in_range && k <= mmax;
    if (!in_range) continue;  // cannot reach m <= mmax from k > mmax anyway
    // distribute over target indices, over every distinct ordering of the
    // sorted source tuple
    std::vector<int> perm = ks;
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<int> ms(n);
      std::function<void(int, Scalar)> rec = [&](int pos, Scalar cur) {
        if (cur.is_zero()) return;
        if (pos == n) {
          std::vector<int> sorted = ms;
          std::sort(sorted.begin(), sorted.end());
          acc[sorted] += cur;
          return;
        }
        for (int m = perm[pos]; m <= mmax; ++m) {
          if (M[perm[pos]][m].is_zero()) continue;
          ms[pos] = m;
          rec(pos + 1, cur * M[perm[pos]][m]);
        }
      };
      rec(0, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // folded over ordered source tuples -> divide by multiplicity of target
  for (auto& [ms, v] : acc) {
    Rat mult = factorial(n);
    int run = 1;
    for (size_t i = 1; i <= ms.size(); ++i) {
      if (i < ms.size() && ms[i] == ms[i - 1]) ++run;
      else {
        mult /= factorial(run);
        run = 1;
      }
    }
    Scalar val = v * Scalar(Rat(1) / mult);
    if (!val.is_zero()) out.set(g, n, ms, std::move(val));
  }
  out.mark_certified(g, n, mmax);
}

bool rspin_decoupling_check(const CorrelatorTable& zc, int r, int g, int n, int kmax) {
  for (const auto& [key, v] : zc.entries()) {
    auto& [gg, nn, ks] = key;
    if (gg != g || nn != n) continue;
    bool has_forbidden = false;
    for (int k : ks) has_forbidden = has_forbidden || (k % r == 0 && k <= kmax);
    if (has_forbidden && !v.is_zero()) return false;
  }
  return true;
}

RSpinStringReport rspin_string_check(const RSpinTable& T, const RSpinConvention& conv,
                                     int g, int n, int kpsi_max) {
  RSpinStringReport rep;
  rep.g = g;
  const int r = conv.r;
  bool any = false;
  for_each_insertion_tuple(r, n, kpsi_max, [&](const RSpinTable::Ins& ins) {
    if (!rep.ok) return;
    // <phi_0 psi^0, ins>_{g,n+1} = sum_j <.. psi^{k_j - 1} ..>_{g,n}
    //   + delta_{g,0} delta_{n,2} delta_{i_1 + i_2, r-2}
    RSpinTable::Ins full = ins;
    full.push_back({0, 0});
    Rat lhs = T.get(g, full);
    Rat rhs = 0;
    for (size_t j = 0; j < ins.size(); ++j) {
      if (ins[j].second == 0) continue;
      RSpinTable::Ins sub = ins;
      --sub[j].second;
      rhs += T.get(g, sub);
    }
    if (g == 0 && n == 2 && ins[0].second == 0 && ins[1].second == 0 &&
        ins[0].first + ins[1].first == r - 2)
      rhs += 1;
    if (lhs != rhs) {
      rep.ok = false;
      rep.fail = ins;
    }
    any = true;
  });
  (void)any;
  return rep;
}

}  // namespace gkmtr
