#include "gkmtr/correlators.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_map>

namespace gkmtr {

void CorrelatorTable::set(int g, int n, std::vector<int> ks, Scalar v) {
  std::sort(ks.begin(), ks.end());
  if (v.is_zero()) {
    t_.erase({g, n, std::move(ks)});
    return;
  }
  t_[{g, n, std::move(ks)}] = std::move(v);
}

Scalar CorrelatorTable::get(int g, int n, std::vector<int> ks) const {
  for (int k : ks)
    if (k <= 0) return Scalar();
  std::sort(ks.begin(), ks.end());
  auto cit = cert_.find({g, n});
  if (cit == cert_.end() || ks.back() > cit->second)
    throw std::out_of_range("correlator outside certified range");
  auto it = t_.find({g, n, ks});
  return it == t_.end() ? Scalar() : it->second;
}

bool CorrelatorTable::certified(int g, int n, int kmax) const {
  auto it = cert_.find({g, n});
  return it != cert_.end() && it->second >= kmax;
}

void CorrelatorTable::mark_certified(int g, int n, int kmax) {
  auto& c = cert_[{g, n}];
  c = std::max(c, kmax);
}

int CorrelatorTable::certified_kmax(int g, int n) const {
  auto it = cert_.find({g, n});
  return it == cert_.end() ? -1 : it->second;
}

namespace {

// packed state key: biased int8 per slot (fp, live, completed...)
inline uint64_t pack_init(int fp, int live) {
  return (static_cast<uint64_t>(static_cast<uint8_t>(fp + 120))) |
         (static_cast<uint64_t>(static_cast<uint8_t>(live + 120))) << 8;
}
inline int unpack_slot(uint64_t k, int slot) {
  return static_cast<int>((k >> (8 * slot)) & 0xff) - 120;
}
inline uint64_t repack_live(uint64_t k, int live) {
  k &= ~(uint64_t(0xff) << 8);
  return k | (static_cast<uint64_t>(static_cast<uint8_t>(live + 120))) << 8;
}
inline uint64_t append_out(uint64_t k, int slot, int e) {
  return k | (static_cast<uint64_t>(static_cast<uint8_t>(e + 120))) << (8 * slot);
}

// value shims so the hot path can run on raw rationals when the table is
// parameter-free
template <class V>
struct VOps;
template <>
struct VOps<Scalar> {
  static Scalar from(const Scalar& s) { return s; }
  static bool zero(const Scalar& v) { return v.is_zero(); }
  static Scalar one(int sgn) { return Scalar(Rat(sgn)); }
};
template <>
struct VOps<Rat> {
  static Rat from(const Scalar& s) { return s.to_rational(); }
  static bool zero(const Rat& v) { return v == 0; }
  static Rat one(int sgn) { return Rat(sgn); }
};

// forward transfer over the n-cycles at fixed hbar budget H
template <class V>
std::map<std::vector<int>, V> cycle_tensor(const BTable& B, int H, int n, int kmax) {
  using Ops = VOps<V>;
  struct Ent {
    int p, q;
    V c;
  };
  const int OUT_LO = -kmax - 1, OUT_HI = -2;  // alpha_k needs k >= 1
  const int KD = B.wmax;

  std::map<std::vector<int>, V> tensor;
  // shared factor-entry lists: B-slices per hbar-order and the two
  // orientations of the 1/(z_a - z_b) expansion
  std::vector<std::vector<Ent>> bents(static_cast<size_t>(H) + 1);
  for (int m = 1; m <= H; ++m)
    for (int i = 0; i <= B.imax; ++i)
      for (int j = 0; j <= B.jmax && i + j <= B.wmax; ++j) {
        const Scalar& v = B.get(m, i, j);
        if (!v.is_zero()) bents[m].push_back({-i - 1, -j - 1, Ops::from(-v)});
      }
  std::vector<Ent> dlt, dgt;
  for (int k = 0; k <= KD; ++k) {
    dlt.push_back({-k - 1, k, Ops::one(-1)});
    dgt.push_back({k, -k - 1, Ops::one(1)});
  }

  std::vector<int> rest(n - 1);
  for (int i = 0; i < n - 1; ++i) rest[i] = i + 2;
  std::sort(rest.begin(), rest.end());
  do {
    std::vector<int> c(n);
    c[0] = 1;
    for (int i = 1; i < n; ++i) c[i] = rest[i - 1];

    std::vector<int> comp(n, 0);
    auto run_composition = [&]() {
      // Psi~(z_a, z_b) = -B(z_a, z_b) - [1/(z_a - z_b) expanded with the
      // smaller ORIGINAL index taken large].  The expansion regions follow
      // the three-case prescription; the sign of the expansion terms is
      // pinned by the reference n=1/n=2 tables and by the z-mode match with
      // the spectral-curve recursion (dedicated convention tests).
      auto factor_entries = [&](int l) -> const std::vector<Ent>& {
        int m = comp[l];
        if (m >= 1) return bents[m];
        return c[l] < c[(l + 1) % n] ? dlt : dgt;
      };

      // per-factor exponent ranges for window propagation
      std::vector<std::array<int, 4>> rng(n);  // p_lo, p_hi, q_lo, q_hi
      for (int l = 0; l < n; ++l) {
        if (comp[l] >= 1) rng[l] = {-B.imax - 1, -1, -B.jmax - 1, -1};
        else if (c[l] < c[(l + 1) % n]) rng[l] = {-KD - 1, -1, 0, KD};
        else rng[l] = {0, KD, -KD - 1, -1};
      }
      // a live exponent must reach the output window through the next
      // factor's first-arg range; the z_1 partial through the closer's
      // second-arg range
      auto live_ok = [&](int after_l, int live) {
        const auto& r = rng[(after_l + 1) % n];
        return live >= OUT_LO - r[1] && live <= OUT_HI - r[0];
      };
      auto fp_ok = [&](int fp) {
        return fp >= OUT_LO - rng[n - 1][3] && fp <= OUT_HI - rng[n - 1][2];
      };

      std::unordered_map<uint64_t, V> states;
      {
        const auto& es0 = factor_entries(0);
        for (const auto& e : es0) {
          if (e.p < -120 || e.p > 120 || e.q < -120 || e.q > 120) continue;
          if (!fp_ok(e.p) || !live_ok(0, e.q)) continue;
          uint64_t key = pack_init(e.p, e.q);
          auto [it, fresh] = states.try_emplace(key, e.c);
          if (!fresh) {
            it->second += e.c;
            if (Ops::zero(it->second)) states.erase(it);
          }
        }
      }
      for (int l = 1; l < n - 1; ++l) {
        const auto& es = factor_entries(l);
        std::unordered_map<uint64_t, V> next;
        next.reserve(states.size() * 4);
        for (const auto& [key, val] : states) {
          int live = unpack_slot(key, 1);
          for (const auto& e : es) {
            int out_e = live + e.p;
            if (out_e < OUT_LO || out_e > OUT_HI) continue;
            if (!live_ok(l, e.q)) continue;
            V v = val * e.c;
            if (Ops::zero(v)) continue;
            uint64_t nk = append_out(repack_live(key, e.q), 1 + l, out_e);
            auto [it, fresh] = next.try_emplace(nk, std::move(v));
            if (!fresh) {
              it->second += v;
              if (Ops::zero(it->second)) next.erase(it);
            }
          }
        }
        states = std::move(next);
      }
      // closing factor l = n-1: (z_{c[n-1]}, z_1)
      const auto& esl = factor_entries(n - 1);
      for (const auto& [key, val] : states) {
        int fp = unpack_slot(key, 0);
        int live = unpack_slot(key, 1);
        for (const auto& e : esl) {
          int e_last = live + e.p;
          if (e_last < OUT_LO || e_last > OUT_HI) continue;
          int e_first = fp + e.q;
          if (e_first < OUT_LO || e_first > OUT_HI) continue;
          V v = val * e.c;
          if (Ops::zero(v)) continue;
          std::vector<int> outs(n);
          outs[0] = e_first;            // z_1
          outs[c[n - 1] - 1] = e_last;  // z_{c[n-1]}
          for (int l = 1; l < n - 1; ++l) outs[c[l] - 1] = unpack_slot(key, 1 + l);
          auto [it, fresh] = tensor.try_emplace(std::move(outs), v);
          if (!fresh) {
            it->second += v;
            if (Ops::zero(it->second)) tensor.erase(it);
          }
        }
      }
    };

    std::function<void(int, int)> comp_rec = [&](int pos, int left) {
      if (pos == n - 1) {
        comp[pos] = left;
        run_composition();
        return;
      }
      for (int m = 0; m <= left; ++m) {
        comp[pos] = m;
        comp_rec(pos + 1, left - m);
      }
    };
    comp_rec(0, H);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return tensor;
}

}  // namespace

void connected_correlators(const Potential& P, const BTable& B, int g, int n, int kmax,
                           CorrelatorTable& out) {
  (void)P;
  const int H = 2 * g - 2 + n;
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (kmax + 1 > 118 || B.wmax > 118) throw std::invalid_argument("window too large for packing");
  if (H < 0 || (H == 0 && n == 2)) {  // (0,1) and (0,2) vanish
    out.mark_certified(g, n, kmax);
    return;
  }
  if (H > B.hmax) throw std::out_of_range("b-table hbar range insufficient");
  if (n >= 2) {
    // the 1/(z_a - z_b) chains shift indices: the full (g,n) slice through
    // kmax draws on b_{i,j} with i + j up to n*kmax - 1
    int need = n * kmax - 1;
    if (B.wmax < need || B.imax < need || B.jmax < need)
      throw std::out_of_range("b-table extent insufficient for requested correlators");
  }

  const int OUT_LO = -kmax - 1, OUT_HI = -2;  // alpha_k needs k >= 1
  const int KD = B.wmax;  // positive-exponent cap for the 1/(z_a - z_b) parts

  if (n == 1) {
    // H_{g,1} = -B(z,z) at hbar^{2g-1}
    for (int k = 1; k <= kmax; ++k) {
      Scalar acc;
      for (int i = 0; i + 0 <= k - 1; ++i) {
        int j = k - 1 - i;
        if (!B.in_range(i, j)) continue;
        acc += B.get(H, i, j);
      }
      // H coefficient is -acc; <alpha_k> = coeff of z^{-k-1} in H_{g,1}
      out.set(g, 1, {k}, -acc);
    }
    out.mark_certified(g, 1, kmax);
    return;
  }

  // parameter-free tables run the transfer on raw rationals
  bool rational = true;
  for (int m = 1; m <= H && rational; ++m)
    for (int i = 0; i <= B.imax && rational; ++i)
      for (int j = 0; j <= B.jmax && i + j <= B.wmax; ++j)
        if (!B.get(m, i, j).is_rational()) {
          rational = false;
          break;
        }

  // (-1)^{n-1} prefactor; fold the ordered tensor onto sorted tuples and
  // verify exact permutation symmetry while doing so
  std::map<std::vector<int>, Scalar> folded;
  auto fold = [&](auto&& tensor) {
    Rat sgn((n - 1) % 2 == 0 ? 1 : -1);
    for (auto& [outs, v] : tensor) {
      std::vector<int> ks(n);
      bool valid = true;
      for (int i = 0; i < n; ++i) {
        ks[i] = -outs[i] - 1;
        if (ks[i] < 1) valid = false;  // alpha_0 slots carry no correlator
      }
      if (!valid) continue;
      std::sort(ks.begin(), ks.end());
      Scalar val = Scalar(sgn) * v;
      auto [it, fresh] = folded.try_emplace(std::move(ks), val);
      if (!fresh && !(it->second == val))
        throw std::logic_error("n-cycle tensor is not permutation symmetric");
    }
  };
  if (rational) fold(cycle_tensor<Rat>(B, H, n, kmax));
  else fold(cycle_tensor<Scalar>(B, H, n, kmax));

  for (auto& [ks, v] : folded) out.set(g, n, ks, std::move(v));
  out.mark_certified(g, n, kmax);
}

Scalar omega_dz_coeff(const CorrelatorTable& T, int g, const std::vector<int>& ks) {
  int n = static_cast<int>(ks.size());
  Scalar v = T.get(g, n, ks);
  return n % 2 == 0 ? v : -v;
}

StringCheckReport string_equation_check(const Potential& P, const CorrelatorTable& T,
                                        int g, int n, int kmax,
                                        const Scalar* f_g) {
  StringCheckReport rep;
  rep.g = g;
  rep.n = n;
  Series invxp = P.inv_xprime_series(2 * kmax + 4);
  auto c_m = [&](int m) -> Scalar {
    // 1/x' = sum_m c_m z^{-m+1}
    if (m - 1 > invxp.hi()) throw std::out_of_range("c_m beyond window");
    return invxp.coeff_or_zero(m - 1);
  };

  // enumerate all sorted tuples (k_1..k_n) with entries in [1, kmax]
  std::vector<int> ks(n, 1);
  auto check_one = [&](const std::vector<int>& tup) -> bool {
    Scalar lhs;
    {
      std::vector<int> full = tup;
      full.push_back(1);
      lhs = T.get(g, n + 1, full);
    }
    Scalar rhs;
    if (g == 0 && n == 2) {
      int m = tup[0] + tup[1];
      rhs += Scalar(Rat(tup[0]) * Rat(tup[1])) * c_m(m);
    }
    if (n == 0 && f_g) rhs -= *f_g;
    for (int j = 0; j < n; ++j) {
      for (int m = 1; m < tup[j]; ++m) {
        Scalar cm = c_m(m);
        if (cm.is_zero()) continue;
        std::vector<int> sub = tup;
        sub[j] = tup[j] - m;
        rhs += Scalar(Rat(tup[j])) * cm * T.get(g, n, sub);
      }
    }
    return lhs == rhs;
  };

  if (n == 0) {
    if (!check_one({})) {
      rep.ok = false;
      return rep;
    }
    return rep;
  }
  for (;;) {
    if (!check_one(ks)) {
      rep.ok = false;
      rep.fail_ks = ks;
      return rep;
    }
    // next weakly-increasing tuple
    int i = n - 1;
    while (i >= 0 && ks[i] == kmax) --i;
    if (i < 0) break;
    ++ks[i];
    for (int j = i + 1; j < n; ++j) ks[j] = ks[i];
  }
  return rep;
}

}  // namespace gkmtr
