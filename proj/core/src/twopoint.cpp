#include "gkmtr/twopoint.hpp"

namespace gkmtr {

namespace {
const Scalar kZero{};

// Bivariate polynomial as a vector of z-polynomials indexed by the w-power.
struct BiPoly {
  std::vector<Poly> wc;

  int wdeg() const { return static_cast<int>(wc.size()) - 1; }
  void trim() {
    while (!wc.empty() && wc.back().is_zero()) wc.pop_back();
  }
  bool is_zero() const { return wc.empty(); }
  void add_scaled(const Poly& in_w, const Poly& in_z, const Scalar& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(wc.size()) <= in_w.degree()) wc.resize(in_w.degree() + 1);
    for (int p = 0; p <= in_w.degree(); ++p) {
      if (in_w.coeff(p).is_zero()) continue;
      wc[p] += in_z * (in_w.coeff(p) * c);
    }
    trim();
  }
};

bool scalar_invertible(const Scalar& s) {
  if (s.is_zero()) return false;
  try {
    (void)s.inverse();
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

// Divide A by D(w,z) = x(w) - x(z) treated as a polynomial in w; the head
// below the nilpotent leading layers has an invertible scalar leading
// coefficient, so the layered long division of Poly::divmod carries over.
void bipoly_divmod(const BiPoly& A, const Poly& x, BiPoly& Q, BiPoly& R) {
  // coefficients of D in w
  std::vector<Poly> D(static_cast<size_t>(x.degree()) + 1);
  for (int p = 1; p <= x.degree(); ++p) D[p] = Poly(x.coeff(p));
  D[0] = Poly(x.coeff(0)) - x;

  int head = x.degree();
  while (head > 0 && !scalar_invertible(x.coeff(head))) --head;
  if (head == 0) throw std::logic_error("x(w)-x(z): no invertible leading layer");
  Scalar lead_inv = x.coeff(head).inverse();

  Q = BiPoly();
  BiPoly rem = A;
  // Nilpotent coefficients above `head` may transiently raise the w-degree;
  // each such round gains truncation depth, so the loop terminates.
  int guard = 0;
  while (rem.wdeg() >= head) {
    if (++guard > 100000) throw std::logic_error("bipoly division diverged");
    int d = rem.wdeg();
    Poly f = rem.wc[d] * lead_inv;
    if (f.is_zero()) {
      rem.wc.pop_back();
      rem.trim();
      continue;
    }
    if (Q.wdeg() < d - head) Q.wc.resize(d - head + 1);
    Q.wc[d - head] += f;
    for (int p = 0; p <= x.degree(); ++p) {
      if (D[p].is_zero()) continue;
      int wp = d - head + p;
      if (rem.wdeg() < wp) rem.wc.resize(wp + 1);
      rem.wc[wp] -= f * D[p];
    }
    rem.trim();
  }
  R = rem;
}

}  // namespace

const Scalar& BTable::get(int m, int i, int j) const {
  if (m < 0 || m > hmax) throw std::out_of_range("BTable hbar order");
  if (!in_range(i, j)) throw std::out_of_range("BTable index");
  if (m == 0) return kZero;
  return b[m][static_cast<size_t>(i) * (jmax + 1) + j];
}

std::vector<Scalar> BTable::hbar_poly(int i, int j) const {
  std::vector<Scalar> out(static_cast<size_t>(hmax) + 1);
  for (int m = 1; m <= hmax; ++m) out[m] = get(m, i, j);
  return out;
}

namespace {

// hbar-graded convolution helpers for the frame route
using HS = std::vector<Series>;

void hs_sub_scaled(HS& f, const HS& g, const std::vector<Scalar>& c) {
  for (size_t m = 0; m < f.size(); ++m)
    for (size_t b = 0; b <= m && b < c.size(); ++b)
      if (!c[b].is_zero()) f[m] -= g[m - b] * c[b];
}

std::vector<Scalar> hpoly_coeff_at(const HS& f, int texp) {
  std::vector<Scalar> c(f.size());
  for (size_t m = 0; m < f.size(); ++m) c[m] = f[m].coeff_or_zero(texp);
  return c;
}

bool hpoly_zero(const std::vector<Scalar>& c, size_t from = 0) {
  for (size_t m = from; m < c.size(); ++m)
    if (!c[m].is_zero()) return false;
  return true;
}

}  // namespace

BTable two_point_frame(const Potential& P, int hmax, int imax, int jmax, int wmax) {
  BTable T;
  T.hmax = hmax;
  T.imax = imax;
  T.jmax = jmax;
  T.wmax = wmax < 0 ? imax + jmax : wmax;
  T.b.assign(static_cast<size_t>(hmax) + 1,
             std::vector<Scalar>(static_cast<size_t>(imax + 1) * (jmax + 1)));

  // positive-power excess is bounded by the deformation budget
  int excess = 0;
  for (const auto& c : P.x().coeffs())
    if (c.ring()) excess = std::max<int>(excess, c.ring()->trunc_total());
  const int K = imax + 1 + excess;
  const int zwin = jmax + 1;

  std::vector<HS> f(static_cast<size_t>(K) + 1);
  for (int k = 1; k <= K; ++k) f[k] = wave_function(P, k, hmax).expand(zwin);

  // phase 1, top down: strip powers z^j with j >= k using higher frames
  for (int k = K; k >= 1; --k) {
    for (int sweep = 0; sweep <= excess + 1; ++sweep) {
      bool dirty = false;
      for (int j = std::min(K - 1, k - 1 + excess); j >= k; --j) {
        auto c = hpoly_coeff_at(f[k], -j);
        if (hpoly_zero(c)) continue;
        if (j + 1 > K) throw std::logic_error("frame canonicalization: index overflow");
        hs_sub_scaled(f[k], f[j + 1], c);
        dirty = true;
      }
      if (!dirty) break;
    }
    // normalize the unit leading coefficient at z^{k-1}
    auto lead = hpoly_coeff_at(f[k], -(k - 1));
    if (lead.empty() || !(lead[0] == Scalar(Rat(1))))
      throw std::logic_error("frame canonicalization: leading term is not unit");
    if (!hpoly_zero(lead, 1)) {
      // multiply by the hbar-adic inverse of the leading unit
      std::vector<Scalar> inv(lead.size());
      inv[0] = Scalar(Rat(1));
      for (size_t m = 1; m < lead.size(); ++m) {
        Scalar acc;
        for (size_t b = 1; b <= m; ++b) acc += lead[b] * inv[m - b];
        inv[m] = -acc;
      }
      HS out(f[k].size());
      for (size_t m = 0; m < out.size(); ++m) {
        Series s = Series::zero_to(zwin);
        for (size_t b = 0; b <= m; ++b)
          if (!inv[b].is_zero()) s += f[k][m - b] * inv[b];
        out[m] = s;
      }
      f[k] = std::move(out);
    }
  }
  // phase 2, bottom up: strip the subleading nonnegative powers z^j, j < k-1
  for (int k = 1; k <= imax + 1; ++k) {
    for (int j = k - 2; j >= 0; --j) {
      auto c = hpoly_coeff_at(f[k], -j);
      if (hpoly_zero(c)) continue;
      hs_sub_scaled(f[k], f[j + 1], c);
    }
    for (int m = 1; m <= hmax; ++m)
      for (int i = 0; i <= jmax && (k - 1) + i <= T.wmax; ++i)
        T.b[m][static_cast<size_t>(k - 1) * (jmax + 1) + i] = f[k][m].coeff_or_zero(i + 1);
    // hbar^0 tail must vanish identically (canonical basis sanity)
    for (int i = 0; i <= jmax; ++i)
      if (!f[k][0].coeff_or_zero(i + 1).is_zero())
        throw std::logic_error("frame canonicalization: hbar^0 tail survives");
  }
  return T;
}

BTable two_point(const Potential& P, int hmax, int imax, int jmax, int wmax) {
  if (P.is_deformed()) return two_point_frame(P, hmax, imax, jmax, wmax);
  BTable T;
  T.hmax = hmax;
  T.imax = imax;
  T.jmax = jmax;
  T.wmax = wmax < 0 ? imax + jmax : wmax;
  T.b.assign(static_cast<size_t>(hmax) + 1,
             std::vector<Scalar>(static_cast<size_t>(imax + 1) * (jmax + 1)));

  const Poly& x = P.x();
  int xdeg = x.degree();

  // wave family Psi_1 .. Psi_xdeg
  std::vector<WaveEntry> psi;
  psi.reserve(xdeg);
  for (int k = 1; k <= xdeg; ++k) psi.push_back(wave_function(P, k, hmax));

  // hbar^0 sanity: numerator equals the divided difference of x
  {
    BiPoly A0;
    for (int i = 1; i <= xdeg; ++i) {
      const Scalar& ai = x.coeff(i);
      if (ai.is_zero()) continue;
      for (int p = 0; p + 1 <= i; ++p) {
        int q = i - 1 - p;
        A0.add_scaled(Poly::monomial(Scalar(Rat(1)), p), Poly::monomial(Scalar(Rat(1)), q), ai);
      }
    }
    // (w - z) * A0 == x(w) - x(z)
    BiPoly lhs;
    for (int p = 0; p <= A0.wdeg(); ++p) {
      lhs.add_scaled(Poly::monomial(Scalar(Rat(1)), p + 1), A0.wc[p], Scalar(Rat(1)));
      lhs.add_scaled(Poly::monomial(Scalar(Rat(1)), p), A0.wc[p] * Poly::z(), Scalar(Rat(-1)));
    }
    BiPoly rhs;
    for (int p = 1; p <= xdeg; ++p)
      rhs.add_scaled(Poly::monomial(Scalar(Rat(1)), p), Poly(Scalar(Rat(1))), x.coeff(p));
    rhs.add_scaled(Poly(Scalar(Rat(1))), x - Poly(x.coeff(0)), Scalar(Rat(-1)));
    BiPoly diff = lhs;
    for (int p = 0; p <= rhs.wdeg(); ++p) {
      if (diff.wdeg() < p) diff.wc.resize(p + 1);
      diff.wc[p] -= rhs.wc[p];
    }
    diff.trim();
    if (!diff.is_zero()) throw std::logic_error("two_point: hbar^0 numerator mismatch");
  }

  int zwin = T.jmax + 1;
  int wwin = T.imax + 1;

  for (int M = 1; M <= hmax; ++M) {
    // assemble the numerator at hbar^M over the common denominator
    // base(w)^P1 base(z)^P2
    int P1 = 0, P2 = 0;
    for (int m1 = 0; m1 <= M; ++m1) {
      for (int k = 1; k <= xdeg; ++k) {
        P1 = std::max(P1, psi[k - 1].h[m1].pow());
        P2 = std::max(P2, psi[k - 1].h[M - m1].pow());
      }
    }
    BiPoly A;
    for (int i = 1; i <= xdeg; ++i) {
      const Scalar& ai = x.coeff(i);
      if (ai.is_zero()) continue;
      for (int p = 0; p + 1 <= i; ++p) {
        int q = i - 1 - p;
        for (int m1 = 0; m1 <= M; ++m1) {
          int m2 = M - m1;
          const RatFun& fw = psi[p].h[m1];   // Psi*_{p+1}[m1], twist below
          const RatFun& fz = psi[q].h[m2];   // Psi_{q+1}[m2]
          if (fw.is_zero() || fz.is_zero()) continue;
          Poly nw = fw.num();
          for (int t = fw.pow(); t < P1; ++t) nw = nw * P.den_base();
          Poly nz = fz.num();
          for (int t = fz.pow(); t < P2; ++t) nz = nz * P.den_base();
          Scalar c = ai;
          if (m1 % 2 != 0) c = -c;  // hbar -> -hbar in the w-side family
          A.add_scaled(nw, nz, c);
        }
      }
    }
    if (A.is_zero()) continue;

    BiPoly Q, R;
    bipoly_divmod(A, x, Q, R);
    if (!R.is_zero())
      throw std::logic_error("two_point: division by x(w)-x(z) left a remainder");

    // expansion of base^{-P1} in w and base^{-P2} in z
    int qwdeg = Q.wdeg();
    int wser_hi = wwin + qwdeg + 1;
    Series binv_w = P1 > 0 ? expand_inv_poly_at_inf(P.den_base(), wser_hi + P1 * P.den_base().degree())
                           : Series::constant(Scalar(Rat(1)));
    Series wfac = Series::constant(Scalar(Rat(1)), wser_hi);
    for (int t = 0; t < P1; ++t) wfac = wfac * binv_w;
    wfac = wfac.truncated(wser_hi);

    int zser_hi = zwin + 1;
    int zdeg_max = 0;
    for (const auto& pc : Q.wc) zdeg_max = std::max(zdeg_max, pc.degree());
    Series binv_z = P2 > 0 ? expand_inv_poly_at_inf(P.den_base(), zser_hi + zdeg_max + P2 * P.den_base().degree())
                           : Series::constant(Scalar(Rat(1)));
    Series zfac = Series::constant(Scalar(Rat(1)), zser_hi + zdeg_max);
    for (int t = 0; t < P2; ++t) zfac = zfac * binv_z;

    std::vector<Series> zpart(static_cast<size_t>(qwdeg) + 1);
    for (int p = 0; p <= qwdeg; ++p)
      zpart[p] = (expand_poly_at_inf(Q.wc[p], zser_hi + zdeg_max) * zfac).truncated(zser_hi);

    // Membership: the kernel must be 1/(w-z) + (doubly negative series), up
    // to a purely polynomial defect with nilpotent coefficients.  The defect
    // is the admissible-vs-canonical frame discrepancy of the deformed wave
    // family; it vanishes identically for polynomial potentials.  Mixed
    // negative/nonnegative terms are forbidden either way.
    auto nilpotent = [](const Scalar& s) {
      if (s.is_zero()) return true;
      if (!s.ring()) return false;
      Scalar slice = s;
      for (size_t i = 0; i < s.ring()->symbols().size(); ++i)
        if (s.ring()->symbols()[i].kind == SymKind::Truncated)
          slice = slice.coeff_of(static_cast<int>(i), 0);
      return slice.is_zero();
    };
    for (int kz = 0; kz >= -zdeg_max; --kz) {
      // w-profile of the z^{-kz} coefficient (kz <= 0: nonnegative z-power)
      Series prof = Series::zero_to(wser_hi);
      for (int p = 0; p <= qwdeg; ++p) {
        const Scalar& c = zpart[p].coeff_or_zero(kz);
        if (!c.is_zero()) prof += wfac.shifted(-p) * c;
      }
      for (int kw = std::max(1, prof.lo()); kw <= prof.hi(); ++kw)
        if (!prof.coeff_or_zero(kw).is_zero())
          throw std::logic_error("two_point: mixed positive-z/negative-w term at hbar^" +
                                 std::to_string(M));
      for (int kw = prof.lo(); kw <= 0; ++kw)
        if (!nilpotent(prof.coeff_or_zero(kw)))
          throw std::logic_error("two_point: non-nilpotent polynomial defect at hbar^" +
                                 std::to_string(M));
    }
    for (int kappa = -qwdeg; kappa <= 0; ++kappa) {
      // z-profile of the w^{-kappa} coefficient (nonnegative w-power)
      Series s = Series::zero_to(zwin);
      for (int p = 0; p <= qwdeg; ++p) {
        const Scalar& cw = wfac.coeff_or_zero(kappa + p);
        if (!cw.is_zero()) s += zpart[p] * cw;
      }
      for (int kz = std::max(1, s.lo()); kz <= s.hi(); ++kz)
        if (!s.coeff_or_zero(kz).is_zero())
          throw std::logic_error("two_point: mixed positive-w/negative-z term at hbar^" +
                                 std::to_string(M));
    }

    for (int i = 0; i <= imax; ++i) {
      for (int p = 0; p <= qwdeg; ++p) {
        const Scalar& cw = wfac.coeff_or_zero(i + 1 + p);
        if (cw.is_zero()) continue;
        for (int j = 0; j <= jmax && i + j <= T.wmax; ++j) {
          const Scalar& cz = zpart[p].coeff_or_zero(j + 1);
          if (cz.is_zero()) continue;
          T.b[M][static_cast<size_t>(i) * (jmax + 1) + j] += cw * cz;
        }
      }
    }
  }
  return T;
}

}  // namespace gkmtr
