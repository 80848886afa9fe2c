#include "gkmtr/expand.hpp"

#include "gkmtr/wave.hpp"

#include <set>

namespace gkmtr {

Scalar leg_coeff_z(const SpectralCurve& C, int beta, int m, int k) {
  // 1/(z-b)^m = sum_{k >= m} binom(k-1, m-1) b^{k-m} z^{-k}; here the target
  // is the z^{-k-1} dz coefficient, so shift by one.
  const Scalar& b = C.crit()[beta].z;
  int kk = k + 1;
  if (kk < m) return Scalar();
  Scalar c(binomial(kk - 1, m - 1));
  if (kk - m > 0) c = c * b.pow(kk - m);
  else if (b.is_zero() && kk == m) c = Scalar(Rat(1));
  return c;
}

namespace {

// generic tensor fill: per position a function k -> Scalar coefficient of the
// lambda/z ^{-k-1} d* basis element
template <typename LegFn>
void fill_correlators(const MultiDiff& md, int kmax, LegFn leg, CorrelatorTable& out) {
  int n = md.n;
  // per-key, per-position coefficient vectors
  std::vector<std::pair<const MultiDiff::Key*, std::vector<std::vector<Scalar>>>> keys;
  for (const auto& [key, v] : md.c) {
    std::vector<std::vector<Scalar>> pc(n);
    for (int p = 0; p < n; ++p) {
      pc[p].resize(kmax + 1);
      for (int k = 1; k <= kmax; ++k) pc[p][k] = leg(key[p].first, key[p].second, k);
    }
    keys.emplace_back(&key, std::move(pc));
  }
  // the tensor is symmetric (asserted upstream), so the value at any ordered
  // representative of a sorted tuple is the correlator
  Scalar sgn(Rat(n % 2 == 0 ? 1 : -1));
  std::vector<int> ks(n, 1);
  for (;;) {
    Scalar acc;
    for (auto& [keyp, pc] : keys) {
      Scalar term = md.c.at(*keyp);
      for (int p = 0; p < n && !term.is_zero(); ++p) term = term * pc[p][ks[p]];
      acc += term;
    }
    if (!acc.is_zero()) out.set(md.g, n, ks, acc * sgn);
    int i = n - 1;
    while (i >= 0 && ks[i] == kmax) --i;
    if (i < 0) break;
    ++ks[i];
    for (int j = i + 1; j < n; ++j) ks[j] = ks[i];
  }
  out.mark_certified(md.g, md.n, kmax);
}

}  // namespace

void tr_correlators_z(const MultiDiff& md, const SpectralCurve& C, int kmax,
                      CorrelatorTable& out) {
  fill_correlators(
      md, kmax, [&](int beta, int m, int k) { return leg_coeff_z(C, beta, m, k); }, out);
}

LambdaChart lambda_chart(const Poly& x, const Scalar& lead_root, int hi) {
  LambdaChart L;
  L.lead = lead_root;
  Series xs = expand_poly_at_inf(x, hi + x.degree() + 2);
  L.lam_of_z = kth_root_at_inf(xs, x.degree(), lead_root).truncated(hi);
  // reciprocal and reversion: sigma(tau) = 1/lambda as a series in tau = 1/z
  Series sigma = L.lam_of_z.inverse();  // valuation +1 in tau
  Series tau_of_sigma = sigma.reversion();
  L.z_of_lam = tau_of_sigma.inverse();       // z as series in sigma = 1/lambda
  L.dz_dlam = -(L.z_of_lam.dt().shifted(2));  // dz/dlambda = -sigma^2 dz/dsigma
  return L;
}

Series leg_series_lambda(const LambdaChart& L, const Scalar& zbeta, int m, int kmax) {
  // (1/(z(lambda) - zbeta)^m) * dz/dlambda, as a series in 1/lambda
  Series den = L.z_of_lam - Series::constant(zbeta, L.z_of_lam.hi());
  Series inv = den.truncated(kmax + 2 + 2).inverse();
  Series body = Series::constant(Scalar(Rat(1)), inv.hi());
  for (int t = 0; t < m; ++t) body = body * inv;
  return (body * L.dz_dlam).truncated(kmax + 1);
}

void tr_correlators_lambda(const MultiDiff& md, const SpectralCurve& C,
                           const LambdaChart& L, int kmax, CorrelatorTable& out) {
  // cache leg series
  std::map<std::pair<int, int>, Series> cache;
  for (const auto& [key, v] : md.c)
    for (const auto& leg : key)
      if (!cache.count(leg))
        cache[leg] = leg_series_lambda(L, C.crit()[leg.first].z, leg.second, kmax);
  fill_correlators(
      md, kmax,
      [&](int beta, int m, int k) { return cache[{beta, m}].coeff_or_zero(k + 1); }, out);
}

std::pair<Poly, Poly> doss_rational(const SpectralCurve& C, int beta, int k) {
  Poly lin = Poly::z() - Poly(C.crit()[beta].z);
  Poly num(Scalar(Rat(-1)));
  Poly den = lin * lin;
  const Poly& xp = C.xprime();
  for (int t = 0; t < k; ++t) {
    // R -> -(R/x')' = -(num' den x' - num (den x')') / (den x')^2
    Poly dxp = den * xp;
    Poly n2 = -(num.derivative() * dxp - num * dxp.derivative());
    Poly d2 = dxp * dxp;
    // reduce by the rational gcd to keep degrees small
    Poly g = Poly::gcd_rational(n2, d2);
    if (g.degree() > 0) {
      n2 = Poly::divexact(n2, g);
      d2 = Poly::divexact(d2, g);
    }
    num = std::move(n2);
    den = std::move(d2);
  }
  // normalize the denominator to be monic
  Scalar inv = den.lead().inverse();
  return {num * inv, den * inv};
}

std::map<std::pair<int, int>, Rat> doss_decompose(const SpectralCurve& C,
                                                  const MultiDiff& omega1) {
  if (omega1.n != 1) throw std::invalid_argument("doss_decompose expects a 1-leg tensor");
  const int NB = static_cast<int>(C.crit().size());
  int max_order = omega1.max_order();
  int kcap = std::max(0, (max_order - 2) / 2);  // dzeta_k has pole order 2k+2
  std::vector<Scalar> poles;
  for (const auto& cp : C.crit()) poles.push_back(cp.z);

  // leg-basis expansion of each dzeta via partial fractions
  std::vector<std::vector<std::map<std::pair<size_t, int>, Scalar>>> legs(
      NB, std::vector<std::map<std::pair<size_t, int>, Scalar>>(kcap + 1));
  std::vector<std::pair<int, int>> basis;  // (beta, k)
  for (int b = 0; b < NB; ++b)
    for (int k = 0; k <= kcap; ++k) {
      auto [num, den] = doss_rational(C, b, k);
      auto pf = partial_fractions(num, den, poles);
      if (!pf.polynomial_part.is_zero())
        throw std::logic_error("dzeta has a polynomial part");
      legs[b][k] = pf.terms;
      basis.push_back({b, k});
    }
  // unknown d_{beta,k}: match coefficients on every (gamma, order) leg
  std::vector<std::pair<int, int>> eqs;  // legs present anywhere
  {
    std::set<std::pair<int, int>> s;
    for (const auto& [key, v] : omega1.c) s.insert(key[0]);
    for (int b = 0; b < NB; ++b)
      for (int k = 0; k <= kcap; ++k)
        for (const auto& [lk, lv] : legs[b][k]) s.insert({static_cast<int>(lk.first), lk.second});
    eqs.assign(s.begin(), s.end());
  }
  size_t m = eqs.size(), nuk = basis.size();
  std::vector<std::vector<Rat>> A(m, std::vector<Rat>(nuk + 1, Rat(0)));
  for (size_t r = 0; r < m; ++r) {
    for (size_t cidx = 0; cidx < nuk; ++cidx) {
      auto [b, k] = basis[cidx];
      auto it = legs[b][k].find({static_cast<size_t>(eqs[r].first), eqs[r].second});
      if (it != legs[b][k].end()) A[r][cidx] = it->second.to_rational();
    }
    MultiDiff::Key key{{eqs[r].first, eqs[r].second}};
    auto it = omega1.c.find(key);
    if (it != omega1.c.end()) A[r][nuk] = it->second.to_rational();
  }
  // Gaussian elimination over Q
  size_t row = 0;
  std::vector<int> pivot_of(nuk, -1);
  for (size_t col = 0; col < nuk && row < m; ++col) {
    size_t p = row;
    while (p < m && A[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(A[p], A[row]);
    Rat inv = 1 / A[row][col];
    for (auto& v : A[row]) v *= inv;
    for (size_t rr = 0; rr < m; ++rr) {
      if (rr == row || A[rr][col] == 0) continue;
      Rat f = A[rr][col];
      for (size_t cc = col; cc <= nuk; ++cc) A[rr][cc] -= f * A[row][cc];
    }
    pivot_of[col] = static_cast<int>(row);
    ++row;
  }
  for (size_t rr = row; rr < m; ++rr)
    if (A[rr][nuk] != 0) throw std::logic_error("doss decomposition inconsistent");
  std::map<std::pair<int, int>, Rat> out;
  for (size_t col = 0; col < nuk; ++col)
    if (pivot_of[col] >= 0 && A[pivot_of[col]][nuk] != 0)
      out[basis[col]] = A[pivot_of[col]][nuk];
  return out;
}

MirrorMap mirror_map(const SpectralCurve& C, const LambdaChart& L, int tailmax) {
  MirrorMap M;
  int r = C.r();
  // y dx = r z(lambda) lambda^{r-1} dlambda
  Series ydx = (L.z_of_lam * Scalar(Rat(r))).shifted(-(r - 1)).truncated(tailmax + 1);
  // shape: A^{-1}(r lambda^r + sum t^i lambda^i) dlambda + d O(lambda^-1)
  Series scaled = ydx * L.lead;  // = r lambda^r + sum t^i lambda^i + tail
  Scalar top = scaled.coeff_or_zero(-r);
  if (!(top == Scalar(Rat(r))))
    throw std::logic_error("mirror map: leading term mismatch (branch error)");
  if (!scaled.coeff_or_zero(1).is_zero())
    throw std::logic_error("mirror map: lambda^{-1} dlambda term is not exact");
  M.t.resize(r);
  for (int i = 0; i < r; ++i) M.t[i] = scaled.coeff_or_zero(-i);
  M.v.resize(r + 1);
  for (int k = 0; k <= r; ++k) M.v[k] = ydx.coeff_or_zero(-(k - 1));
  M.tail.resize(tailmax + 1);
  for (int k = 1; k <= tailmax && k + 1 <= ydx.hi(); ++k)
    M.tail[k] = -ydx.coeff_or_zero(k + 1);  // dlambda^{-k}/k basis
  return M;
}

}  // namespace gkmtr
